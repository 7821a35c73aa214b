#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "localsolve/generators.hpp"
#include "localsolve/regular_graph.hpp"
#include "localsolve/sdd_matrix.hpp"

namespace localsolve {

// ---------------------------------------------------------------------------
// Signed PSD instance M = mu I + A1 - A2

enum class SpectralFilter {
  /// Second eigenvalue of G1 at most d^{2/3} / 4 in magnitude.
  Strict,
  /// Second eigenvalue at most 2 sqrt(d-1) + slack.
  Ramanujan,
  Off,
};

struct PsdBuildOptions {
  SpectralFilter filter = SpectralFilter::Strict;
  std::size_t r_target = 3;
  /// Largest radius tried by the certifier. Unset: grow until it fails.
  std::optional<std::size_t> r_cap;
  std::size_t max_retries = 20;
  double ramanujan_slack = 0.1;
};

/// Breadth-first exploration of G1 u G2 from a center. Up to `radius` every
/// vertex at depth < radius has one slot to its parent and 2d - 1 slots to
/// distinct new vertices, so the explored ball is a 2d-regular tree apart from
/// possible edges between two vertices at depth exactly `radius`.
struct TreeCertificate {
  Vertex center = 0;
  std::size_t radius = 0;
  /// Largest radius whose induced ball is a tree (no such boundary edges).
  std::size_t induced_radius = 0;
  /// Distance from the center inside the ball, -1 outside.
  std::vector<int> level;
  /// Product of path signs in A2 - A1 (G1 edge -1, G2 edge +1), 0 outside.
  std::vector<int> sign;
  /// |V_k| for k = 0..radius.
  std::vector<std::size_t> level_sizes;
};

/// Largest r <= cap that the exploration certifies (r = 0 always does).
TreeCertificate certify_tree(const RegularGraph& g1, const RegularGraph& g2, Vertex center,
                             std::size_t cap);

struct PsdInstance {
  std::size_t n = 0;
  std::size_t d = 0;
  RegularGraph g1;
  RegularGraph g2;
  /// Off-diagonal entries of A1 - A2, upper triangle, nonzero only.
  std::vector<Triplet> signed_union;
  double union_norm = 0.0;
  double mu = 0.0;
  /// mu I + A1 - A2, Relaxed validation.
  SddMatrix m_matrix;
  Vertex w_hat = 0;
  std::size_t r_tree = 0;
  TreeCertificate tree;
  double g1_second_eigenvalue = 0.0;
  SpectralFilter filter = SpectralFilter::Strict;
  std::uint64_t seed = 0;
  std::size_t attempts = 0;
};

/// Throws ConstructionFailed (with the last diagnostics) after max_retries.
PsdInstance build_psd_hard_instance(std::size_t n, std::size_t d, std::uint64_t seed,
                                    const PsdBuildOptions& options = {});

/// y = (A1 - A2) x.
void multiply_signed_union(const PsdInstance& inst, std::span<const double> x,
                           std::span<double> y);

/// |W_i| for i = 0..max_length: walks of length i from the root of the
/// infinite `tree_degree`-regular tree that end at depth exactly r.
std::vector<double> walk_counts(std::size_t tree_degree, std::size_t r, std::size_t max_length);

/// Upper summation index floor(5 r log2 mu) of Q.
std::size_t q_upper_index(std::size_t r, double mu);

/// Q = sum_{i=r}^{q_upper_index} mu^{-i} |W_i|.
double q_value(std::size_t d, std::size_t r, double mu);

/// C r^2 ln d |V_r|^{-1/3}, unclamped.
double bias_delta(std::size_t d, std::size_t r, std::size_t level_size, double c_const);

struct BiasedB {
  int sigma = 1;
  double delta = 0.0;
  double delta_unclamped = 0.0;
  bool clamped = false;
  std::size_t r = 0;
  std::vector<double> values;
};

/// Throws RadiusTooLarge unless 1 <= r <= r_tree.
BiasedB sample_biased_b(const PsdInstance& inst, std::size_t r, int sigma, double c_const,
                        std::uint64_t seed, std::optional<double> delta_override = std::nullopt);

struct SignRecoveryTrial {
  int sigma = 1;
  double x_w = 0.0;
  double x_inf = 0.0;
  /// x_w / (delta mu^-1 Q) and ||x||_inf / (delta mu^-1 Q).
  double x_w_ratio = 0.0;
  double x_inf_ratio = 0.0;
  bool recovered = false;
  bool in_band = false;
  bool norm_bound = false;
};

struct SignRecoveryReport {
  std::size_t r = 0;
  double delta = 0.0;
  double delta_unclamped = 0.0;
  bool clamped = false;
  double q = 0.0;
  std::size_t q_upper = 0;
  double mu = 0.0;
  std::vector<SignRecoveryTrial> trials;
  double recovery_rate = 0.0;
  double band_rate = 0.0;
  double norm_bound_rate = 0.0;
};

SignRecoveryReport run_sign_recovery_experiment(const PsdInstance& inst, std::size_t r,
                                                double c_const, std::size_t trials,
                                                std::uint64_t seed,
                                                std::optional<double> delta_override = std::nullopt);

/// Success rate of the majority vote over m draws of a delta-biased +-1
/// stream, one entry per sample count. Ties are broken by a fair coin.
std::vector<double> probe_complexity_curve(double delta, std::span<const std::size_t> sample_counts,
                                           std::size_t trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Two expanders joined by a bridge matching

struct KappaBuildOptions {
  ExpanderOptions expander;
  bool measure_kappa = true;
};

struct KappaInstance {
  std::size_t n = 0;
  std::size_t k = 0;
  /// 3-regular expander on n/2 vertices; copy j occupies [j n/2, (j+1) n/2).
  RegularGraph x;
  /// (c, c + n/2) pairs.
  std::vector<std::pair<Vertex, Vertex>> bridges;
  /// Union padded to degree 4 with self-loop slots; its Laplacian is the
  /// Laplacian of the union.
  RegularGraph padded;
  /// Part index 0..3 for P1..P4.
  std::vector<std::uint8_t> part;
  double kappa_measured = 0.0;
  std::uint64_t seed = 0;
};

/// Throws PreconditionViolated unless 4 | n and 1 <= n/k <= n/2.
KappaInstance build_kappa_instance(std::size_t n, std::size_t k, std::uint64_t seed,
                                   const KappaBuildOptions& options = {});

/// min(1/2, sqrt(ln n) / k).
double default_bias(std::size_t n, std::size_t k);

/// Throws InfeasibleConditioning if |P1| != |P2| or |P3| != |P4|.
std::vector<double> sample_balanced_b(const KappaInstance& inst, std::uint64_t seed);
std::vector<double> sample_unbalanced_b(const KappaInstance& inst, double p, std::uint64_t seed);

struct BridgeGapStats {
  double max_gap = 0.0;
  double mean_gap = 0.0;
  double fraction_above = 0.0;
};

struct BridgeGapTrial {
  BridgeGapStats balanced;
  BridgeGapStats unbalanced;
};

struct BridgeGapReport {
  double p = 0.0;
  double threshold = 0.0;
  std::vector<BridgeGapTrial> trials;
  double balanced_max = 0.0;
  double unbalanced_max = 0.0;
  double balanced_max_median = 0.0;
  double unbalanced_max_median = 0.0;
  double unbalanced_mean_min = 0.0;
  /// Truncated-series cross-check on the first unbalanced sample:
  /// terms = 4 ceil(k ln n), error = ||x' - x||_inf / ||x||_inf.
  std::size_t series_terms = 0;
  double series_relative_error = 0.0;
};

/// Gaps |x_u - x_v| over the bridges for x = L+ b. The threshold for
/// `fraction_above` defaults to sqrt(ln n).
BridgeGapReport run_bridge_gap_experiment(const KappaInstance& inst, double p, std::size_t trials,
                                          std::uint64_t seed,
                                          std::optional<double> threshold = std::nullopt);

// ---------------------------------------------------------------------------
// Instance directories

void write_psd_instance(const std::filesystem::path& dir, const PsdInstance& inst,
                        const std::vector<BiasedB>& samples = {});
void write_kappa_instance(const std::filesystem::path& dir, const KappaInstance& inst,
                          const std::vector<std::pair<std::string, std::vector<double>>>& vectors = {});

}  // namespace localsolve
