#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "localsolve/alias_table.hpp"
#include "localsolve/regular_graph.hpp"
#include "localsolve/sdd_matrix.hpp"
#include "localsolve/vector_oracle.hpp"

namespace localsolve {

/// How many walks to run per length.
enum class SampleRule {
  /// Exactly `ell` walks (the Hoeffding count).
  Hoeffding,
  /// Doubling rounds that stop once an empirical Bernstein bound certifies
  /// the Hoeffding accuracy target; never more than `ell` walks.
  EmpiricalBernstein,
};

enum class Target { Pair, Coordinate };

struct SolveParams {
  double epsilon = 0.1;
  /// Accuracy used for s and ell after absorbing constant factors.
  double internal_epsilon = 0.1;
  std::size_t s = 1;
  /// Hoeffding walk count; an upper bound under EmpiricalBernstein.
  std::size_t ell = 1;
  double mu2_lower = 0.0;
  double lambda_tilde_upper = 0.0;
  std::size_t b0_upper = 0;
  bool lazy = true;
  SampleRule rule = SampleRule::EmpiricalBernstein;
  /// 0 means 1/s.
  double failure_budget = 0.0;
  unsigned threads = 1;
};

struct Estimate {
  double value = 0.0;
  std::size_t s = 0;
  /// Walks actually run per length.
  std::size_t ell = 0;
  std::uint64_t total_steps = 0;
  std::uint64_t probe_count = 0;
  std::size_t distinct_probes = 0;
  std::uint64_t seed = 0;
  std::size_t rounds = 0;
};

struct LaplacianPlanOptions {
  bool lazy = true;
  Target target = Target::Coordinate;
  SampleRule rule = SampleRule::EmpiricalBernstein;
  std::optional<double> failure_budget;
  unsigned threads = 1;
};

/// Throws BadBounds unless epsilon > 0 and mu2_lower > 0. A bound above the
/// walk degree (d, or 2d when lazy) is capped there.
SolveParams plan_params_laplacian(std::size_t d, double mu2_lower, double epsilon,
                                  std::size_t b0_upper,
                                  const LaplacianPlanOptions& options = {});

struct SddPlanOptions {
  SampleRule rule = SampleRule::EmpiricalBernstein;
  std::optional<double> failure_budget;
  unsigned threads = 1;
};

/// Throws BadBounds unless 0 <= lambda_tilde_upper < 1 and epsilon > 0.
SolveParams plan_params_sdd(double lambda_tilde_upper, double epsilon, std::size_t b0_upper,
                            double d_max, double d_min, const SddPlanOptions& options = {});

/// mu2 lower bound d / kappa_bar.
double mu2_from_kappa(std::size_t d, double kappa_bar);
/// lambda~ upper bound 1 - 1/(2 kappa_bar), treating kappa_bar as a bound on
/// the condition number of S~.
double lambda_tilde_from_kappa(double kappa_bar);

/// chi_{u,v}^T L+ b. u == v returns 0 without walking.
Estimate estimate_pair_difference(const RegularGraph& g, const VectorOracle& b, Vertex u,
                                  Vertex v, const SolveParams& p, std::uint64_t seed);

/// e_u^T L+ b.
Estimate estimate_coordinate_laplacian(const RegularGraph& g, const VectorOracle& b, Vertex u,
                                       const SolveParams& p, std::uint64_t seed);

/// e_u^T D^{-1/2} S~+ D^{-1/2} b.
Estimate estimate_coordinate_sdd(const SddMatrix& s, const VectorOracle& b, Vertex u,
                                 const SolveParams& p, std::uint64_t seed);

/// Median of `rounds` estimates run with seeds derived from `seed`.
Estimate amplify_median(std::size_t rounds, std::uint64_t seed,
                        const std::function<Estimate(std::uint64_t)>& run);

/// Walk distributions e_u^T P^t for t < s, each with an alias sampler.
struct PowerTable {
  Vertex source = 0;
  std::size_t s = 0;
  /// d, or 2d for the lazy walk.
  std::size_t walk_degree = 0;
  /// rows[t] lists (vertex, probability) over the support, sorted by vertex.
  std::vector<std::vector<std::pair<Vertex, double>>> rows;
  std::vector<AliasTable> samplers;
};

/// Throws MemoryBudgetExceeded when s rows of n entries exceed the budget.
PowerTable preprocess_powers(const RegularGraph& g, Vertex u, std::size_t s, bool lazy = false,
                             std::size_t memory_budget_bytes = std::size_t{1} << 30);

/// ceil(8 s^2 eps^-2 ln 8).
std::size_t preprocessing_sample_count(std::size_t s, double epsilon);

/// Mean of preprocessing_sample_count samples of (s / walk_degree) b_z with
/// t uniform in [0, s) and z drawn from row t.
Estimate estimate_with_preprocessing(const PowerTable& table, const VectorOracle& b,
                                     double epsilon, std::uint64_t seed);

}  // namespace localsolve
