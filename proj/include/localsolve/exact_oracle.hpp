#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "localsolve/regular_graph.hpp"
#include "localsolve/sdd_matrix.hpp"

namespace localsolve {

struct OracleOptions {
  /// Largest dimension handled by a dense symmetric eigensolve.
  std::size_t dense_cutoff = 2000;
  std::size_t max_iterations = 0;  // 0: 20 n + 1000
  double cg_tolerance = 1e-13;
  double residual_tolerance = 1e-9;
  /// Relative 2-norm test for "b orthogonal to the kernel".
  double range_tolerance = 1e-9;
  std::size_t reorthogonalize_every = 50;
  std::uint64_t seed = 0x5eed;
};

/// For a RegularGraph: mu2 and lambda_max describe L = dI - A, lambda_tilde
/// the lazy normalized walk. For an SddMatrix: mu2 and lambda_max describe
/// S~ = D^{-1/2} S D^{-1/2}, and lambda_tilde is the largest eigenvalue of
/// B~ = I - S~/2 that is not 1.
struct Spectrum {
  double mu2 = 0.0;
  double lambda_tilde = 0.0;
  double lambda_max = 0.0;
  std::size_t kernel_dim = 0;
  bool dense = true;
};

Spectrum spectrum(const RegularGraph& g, const OracleOptions& options = {});
Spectrum spectrum(const SddMatrix& s, const OracleOptions& options = {});

/// Orthonormal basis of ker(S) for an SDD matrix. A connected component of
/// the off-diagonal pattern contributes one vector iff every row in it is
/// tight and its signs are balanced; the vector is the balancing sign
/// pattern. Empty for matrices that are not SDD.
std::vector<std::vector<double>> kernel_basis(const SddMatrix& s);

/// x* = D^{-1/2} S~+ D^{-1/2} b. Throws NotInRange when b has a kernel
/// component, SingularBeyondKernel when CG stalls, NotInRange when the final
/// residual exceeds the tolerance.
std::vector<double> exact_solve(const SddMatrix& s, std::span<const double> b,
                                const OracleOptions& options = {});

/// Minimum-norm solution L+ b of the graph Laplacian system.
std::vector<double> exact_solve_laplacian(const RegularGraph& g, std::span<const double> b,
                                          const OracleOptions& options = {});

/// (1/d) sum_{t<s} (A/d)^t b. Throws NotInRange unless b sums to zero.
std::vector<double> truncated_series(const RegularGraph& g, std::span<const double> b,
                                     std::size_t s);

/// lambda_max / lambda_min^+ of S.
double condition_number(const SddMatrix& s, const OracleOptions& options = {});
/// Same for a dense symmetric PSD matrix in row-major order.
double condition_number_dense(std::size_t n, std::span<const double> row_major);

using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;

struct ExtremeEigenvalues {
  double min = 0.0;
  double max = 0.0;
  std::size_t iterations = 0;
};

/// Extreme eigenvalues of a symmetric operator restricted to the orthogonal
/// complement of `deflate` (orthonormal vectors). Lanczos with full
/// reorthogonalization; both ends converged to `tolerance` relative to the
/// spectral radius. Throws ConvergenceFailure.
ExtremeEigenvalues extreme_eigenvalues(std::size_t n, const LinearOperator& op,
                                       std::span<const std::vector<double>> deflate = {},
                                       double tolerance = 1e-10, std::uint64_t seed = 1,
                                       std::size_t max_steps = 0);

/// ||op||_2 for a symmetric operator.
double spectral_norm(std::size_t n, const LinearOperator& op, double tolerance = 1e-10,
                     std::uint64_t seed = 1);

}  // namespace localsolve
