#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "localsolve/regular_graph.hpp"
#include "localsolve/rng.hpp"

namespace localsolve {

struct Triplet {
  Vertex row;
  Vertex col;
  double value;
};

enum class Validation {
  /// Reject anything that is not SDD with a positive diagonal.
  Strict,
  /// Keep the diagonal positivity requirement but only record dominance.
  /// Used for signed PSD matrices that reuse the walk/matvec machinery.
  Relaxed,
};

/// Which structural certificates a matrix satisfies. Symmetry always holds
/// by construction; dominance is only guaranteed for Strict matrices.
struct Certificates {
  bool symmetric = true;
  bool positive_diagonal = true;
  bool diagonally_dominant = true;
  /// First row violating dominance when `diagonally_dominant` is false.
  std::size_t first_violation = 0;
};

/// Off-diagonal entry S_ij of row i.
struct OffDiagonal {
  Vertex col;
  double value;
};

/// Sparse symmetric matrix S with D = diag(S) > 0, stored as full CSR rows
/// of off-diagonal entries. A = D - S has zero diagonal and A_ij = -S_ij.
class SddMatrix {
 public:
  /// Dominance slack: S_ii >= sum |S_ij| - kDominanceSlack * S_ii.
  static constexpr double kDominanceSlack = 1e-12;

  SddMatrix() = default;

  /// `entries` lists each unordered position at most once (either triangle);
  /// duplicates of the same position are summed. Zero values are dropped.
  /// Throws NonpositiveDiagonal(row) and, under Strict validation,
  /// NotDiagonallyDominant(row).
  static SddMatrix from_triplets(std::size_t n, std::span<const Triplet> entries,
                                 Validation validation = Validation::Strict);

  /// L = dI - A for a regular graph, with self-loops cancelling on the
  /// diagonal. Throws NonpositiveDiagonal for vertices with only self-loops.
  static SddMatrix laplacian(const RegularGraph& g);

  std::size_t n() const noexcept { return diag_.size(); }
  std::size_t nnz_offdiagonal() const noexcept { return entries_.size(); }
  double diag(Vertex i) const noexcept { return diag_[i]; }
  std::span<const double> diagonal() const noexcept { return diag_; }
  std::span<const OffDiagonal> row(Vertex i) const noexcept {
    return {entries_.data() + row_start_[i], row_start_[i + 1] - row_start_[i]};
  }
  /// Running sums of |S_ij| over row i, aligned with row(i).
  std::span<const double> cumulative_abs(Vertex i) const noexcept {
    return {cumulative_.data() + row_start_[i], row_start_[i + 1] - row_start_[i]};
  }
  double abs_offdiagonal_sum(Vertex i) const noexcept {
    const auto c = cumulative_abs(i);
    return c.empty() ? 0.0 : c.back();
  }

  double d_max() const noexcept { return d_max_; }
  double d_min() const noexcept { return d_min_; }
  const Certificates& certificates() const noexcept { return certificates_; }
  bool is_sdd() const noexcept { return certificates_.diagonally_dominant; }

  /// y = S x.
  void multiply(std::span<const double> x, std::span<double> y) const;
  /// y = S~ x with S~ = D^{-1/2} S D^{-1/2}.
  void multiply_normalized(std::span<const double> x, std::span<double> y) const;

  /// Upper-triangle triplets (row <= col) including the diagonal.
  std::vector<Triplet> triplets() const;

  /// Row-major dense copy.
  std::vector<double> to_dense() const;

 private:
  std::vector<double> diag_;
  std::vector<std::size_t> row_start_;
  std::vector<OffDiagonal> entries_;
  std::vector<double> cumulative_;
  double d_max_ = 0.0;
  double d_min_ = 0.0;
  Certificates certificates_;
};

/// Result of one lazy signed step.
struct WalkOutcome {
  enum class Kind { Moved, Stayed, Terminated };
  Kind kind = Kind::Stayed;
  Vertex vertex = 0;
  /// sgn(A_vv') for a move, +1 for staying, 0 once terminated.
  int sign = 1;

  friend bool operator==(const WalkOutcome&, const WalkOutcome&) = default;
};

/// One step of the signed lazy walk on the non-zeros of A = D - S: stay with
/// probability 1/2, move to v' with probability |A_vv'| / (2 d_v), terminate
/// with the remaining probability 1/2 - sum |A_vv'| / (2 d_v).
WalkOutcome step_lazy_signed(const SddMatrix& s, Vertex v, CounterRng& rng) noexcept;

/// Exact outcome distribution of step_lazy_signed from v. Moves to the same
/// column are merged; the terminated entry is omitted when its probability
/// is zero.
std::vector<std::pair<WalkOutcome, double>> lazy_signed_outcomes(const SddMatrix& s,
                                                                 Vertex v);

}  // namespace localsolve
