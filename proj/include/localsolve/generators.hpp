#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "localsolve/regular_graph.hpp"

namespace localsolve {

RegularGraph cycle_graph(std::size_t n);
RegularGraph complete_graph(std::size_t n);

/// Uniform-ish simple d-regular graph by the Steger-Wormald pairing process.
/// Throws ConstructionFailed after `max_attempts` restarts.
RegularGraph random_regular_graph(std::size_t n, std::size_t d, std::uint64_t seed,
                                  std::size_t max_attempts = 1000);

/// max |lambda| over adjacency eigenvalues other than the top one (d).
double second_adjacency_eigenvalue(const RegularGraph& g);

struct ExpanderOptions {
  /// Accept when the second eigenvalue is at most 2 sqrt(d-1) + slack.
  double slack = 0.1;
  std::size_t max_retries = 100;
};

/// Connected random regular graph passing the spectral filter.
RegularGraph random_expander(std::size_t n, std::size_t d, std::uint64_t seed,
                             const ExpanderOptions& options = {});

/// Relabels vertex v as perm[v].
RegularGraph relabel(const RegularGraph& g, std::span<const Vertex> perm);

}  // namespace localsolve
