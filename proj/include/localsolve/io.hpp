#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>

#include "localsolve/regular_graph.hpp"
#include "localsolve/sdd_matrix.hpp"
#include "localsolve/vector_oracle.hpp"

namespace localsolve {

/// Whitespace-separated "u v" lines, 0-based ids, '#' starts a comment.
/// A line "v v" contributes one self-loop slot. n defaults to max id + 1.
RegularGraph load_edge_list(std::istream& in, std::optional<std::size_t> n = std::nullopt);

/// MatrixMarket "coordinate real symmetric" (or "general", in which case the
/// mirrored entries must agree). Indices are 1-based as the format requires.
SddMatrix load_sdd_matrix(std::istream& in, Validation validation = Validation::Strict);

/// "index value" lines, 0-based, '#' comments. Unlisted entries are zero.
VectorOracle load_vector(std::istream& in, std::size_t n);

RegularGraph load_edge_list_file(const std::filesystem::path& path,
                                 std::optional<std::size_t> n = std::nullopt);
SddMatrix load_sdd_matrix_file(const std::filesystem::path& path,
                               Validation validation = Validation::Strict);
VectorOracle load_vector_file(const std::filesystem::path& path, std::size_t n);

void write_edge_list(std::ostream& out, const RegularGraph& g);
void write_matrix_market(std::ostream& out, const SddMatrix& s);
/// Nonzero entries only, values at full precision.
void write_vector(std::ostream& out, std::span<const double> values);

}  // namespace localsolve
