#include "localsolve/hard_instances.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <string>

#include "localsolve/error.hpp"
#include "localsolve/exact_oracle.hpp"
#include "localsolve/io.hpp"
#include "localsolve/json_output.hpp"
#include "localsolve/rng.hpp"

namespace localsolve {

namespace {

constexpr auto kNone = static_cast<Vertex>(-1);

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

const char* filter_name(SpectralFilter f) {
  switch (f) {
    case SpectralFilter::Strict: return "strict";
    case SpectralFilter::Ramanujan: return "ramanujan";
    case SpectralFilter::Off: return "off";
  }
  return "?";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  out << text;
}

}  // namespace

TreeCertificate certify_tree(const RegularGraph& g1, const RegularGraph& g2, Vertex center,
                             std::size_t cap) {
  const std::size_t n = g1.n();
  TreeCertificate cert;
  cert.center = center;
  cert.level.assign(n, -1);
  cert.sign.assign(n, 0);
  std::vector<Vertex> parent(n, kNone);
  cert.level[center] = 0;
  cert.sign[center] = 1;
  cert.level_sizes = {1};
  std::vector<Vertex> frontier{center};

  // Slots of v in the union that land inside the ball: exactly one, to its parent.
  const auto closed = [&](Vertex v) {
    std::size_t hits = 0;
    for (const RegularGraph* g : {&g1, &g2})
      for (Vertex w : g->neighbors(v))
        if (cert.level[w] >= 0) {
          if (w != parent[v]) return false;
          ++hits;
        }
    return hits == (parent[v] == kNone ? 0u : 1u);
  };
  if (!closed(center)) return cert;

  for (std::size_t r = 0; r < cap; ++r) {
    std::vector<Vertex> next;
    bool ok = true;
    for (Vertex v : frontier) {
      for (int side = 0; side < 2 && ok; ++side) {
        const RegularGraph& g = side == 0 ? g1 : g2;
        for (Vertex w : g.neighbors(v)) {
          if (w == parent[v]) continue;
          if (cert.level[w] >= 0) {
            ok = false;
            break;
          }
          cert.level[w] = static_cast<int>(r + 1);
          cert.sign[w] = cert.sign[v] * (side == 0 ? -1 : 1);
          parent[w] = v;
          next.push_back(w);
        }
      }
      if (!ok) break;
    }
    if (!ok) {
      for (Vertex w : next) {
        cert.level[w] = -1;
        cert.sign[w] = 0;
        parent[w] = kNone;
      }
      break;
    }
    cert.radius = r + 1;
    cert.level_sizes.push_back(next.size());
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  cert.induced_radius = cert.radius;
  for (Vertex w : frontier)
    if (!closed(w)) {
      cert.induced_radius = cert.radius - 1;
      break;
    }
  return cert;
}

void multiply_signed_union(const PsdInstance& inst, std::span<const double> x,
                           std::span<double> y) {
  const auto& m = inst.m_matrix;
  for (Vertex i = 0; i < m.n(); ++i) {
    double acc = 0.0;
    for (const auto& e : m.row(i)) acc += e.value * x[e.col];
    y[i] = acc;
  }
}

PsdInstance build_psd_hard_instance(std::size_t n, std::size_t d, std::uint64_t seed,
                                    const PsdBuildOptions& options) {
  if (d < 3 || (n * d) % 2 != 0 || d >= n)
    throw Error(ErrorCode::PreconditionViolated, "need d >= 3, d < n and n d even");
  const std::size_t cap = options.r_cap.value_or(n);
  std::string diagnostics = "no attempt made";
  for (std::size_t attempt = 0; attempt < options.max_retries; ++attempt) {
    const std::uint64_t s1 = derive_seed(seed, StreamRole::Construction, attempt);
    RegularGraph g1 = random_regular_graph(n, d, s1);
    if (g1.component_count() != 1) {
      diagnostics = "attempt " + std::to_string(attempt) + ": G1 disconnected";
      continue;
    }
    double lambda = 0.0;
    if (options.filter != SpectralFilter::Off) {
      lambda = second_adjacency_eigenvalue(g1);
      const double dd = static_cast<double>(d);
      const double bound = options.filter == SpectralFilter::Strict
                               ? std::pow(dd, 2.0 / 3.0) / 4.0
                               : 2.0 * std::sqrt(dd - 1.0) + options.ramanujan_slack;
      if (lambda > bound) {
        diagnostics = "attempt " + std::to_string(attempt) + ": second eigenvalue " +
                      std::to_string(lambda) + " above filter bound " + std::to_string(bound);
        continue;
      }
    }

    CounterRng rng(s1, StreamRole::Construction, 0xfeed);
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    shuffle(perm.begin(), perm.end(), rng);
    RegularGraph g2 = relabel(g1, perm);

    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0u);
    shuffle(order.begin(), order.end(), rng);
    TreeCertificate best;
    bool found = false;
    std::size_t best_radius = 0;
    for (Vertex c : order) {
      auto cert = certify_tree(g1, g2, c, cap);
      best_radius = std::max(best_radius, cert.radius);
      if (cert.radius >= options.r_target) {
        best = std::move(cert);
        found = true;
        break;
      }
    }
    if (!found) {
      diagnostics = "attempt " + std::to_string(attempt) + ": best certified radius " +
                    std::to_string(best_radius) + " below target " +
                    std::to_string(options.r_target);
      continue;
    }

    PsdInstance inst;
    inst.n = n;
    inst.d = d;
    inst.seed = seed;
    inst.attempts = attempt + 1;
    inst.filter = options.filter;
    inst.g1_second_eigenvalue =
        options.filter == SpectralFilter::Off ? second_adjacency_eigenvalue(g1) : lambda;

    std::vector<Triplet> off;
    for (Vertex v = 0; v < n; ++v) {
      for (Vertex w : g1.neighbors(v))
        if (w > v) off.push_back({v, w, 1.0});
      for (Vertex w : g2.neighbors(v))
        if (w > v) off.push_back({v, w, -1.0});
    }
    auto with_diag = off;
    for (Vertex v = 0; v < n; ++v) with_diag.push_back({v, v, 1.0});
    // Unit diagonal placeholder to merge entries; the off-diagonal part is A1 - A2.
    const SddMatrix merged = SddMatrix::from_triplets(n, with_diag, Validation::Relaxed);
    for (const auto& t : merged.triplets())
      if (t.row != t.col) inst.signed_union.push_back(t);
    inst.union_norm = spectral_norm(
        n,
        [&merged](std::span<const double> x, std::span<double> y) {
          for (Vertex i = 0; i < merged.n(); ++i) {
            double acc = 0.0;
            for (const auto& e : merged.row(i)) acc += e.value * x[e.col];
            y[i] = acc;
          }
        },
        1e-12, s1);
    inst.mu = 2.0 * inst.union_norm;
    auto m_entries = inst.signed_union;
    for (Vertex v = 0; v < n; ++v) m_entries.push_back({v, v, inst.mu});
    inst.m_matrix = SddMatrix::from_triplets(n, m_entries, Validation::Relaxed);
    inst.g1 = std::move(g1);
    inst.g2 = std::move(g2);
    inst.w_hat = best.center;
    inst.r_tree = best.radius;
    inst.tree = std::move(best);
    return inst;
  }
  throw Error(ErrorCode::ConstructionFailed,
              "PSD instance not built after " + std::to_string(options.max_retries) +
                  " attempts (filter " + filter_name(options.filter) + "); last: " + diagnostics);
}

std::vector<double> walk_counts(std::size_t tree_degree, std::size_t r, std::size_t max_length) {
  const double D = static_cast<double>(tree_degree);
  std::vector<double> cur(max_length + 2, 0.0), next(max_length + 2, 0.0), out;
  cur[0] = 1.0;
  for (std::size_t i = 0; i <= max_length; ++i) {
    out.push_back(r < cur.size() ? cur[r] : 0.0);
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t k = 0; k + 1 < cur.size(); ++k) {
      if (cur[k] == 0.0) continue;
      if (k == 0) {
        next[1] += D * cur[0];
      } else {
        next[k - 1] += cur[k];
        next[k + 1] += (D - 1.0) * cur[k];
      }
    }
    std::swap(cur, next);
  }
  return out;
}

std::size_t q_upper_index(std::size_t r, double mu) {
  const double top = std::floor(5.0 * static_cast<double>(r) * std::log2(mu));
  return std::max(r, top > 0.0 ? static_cast<std::size_t>(top) : std::size_t{0});
}

double q_value(std::size_t d, std::size_t r, double mu) {
  const std::size_t top = q_upper_index(r, mu);
  const auto w = walk_counts(2 * d, r, top);
  double q = 0.0;
  for (std::size_t i = r; i <= top; ++i) q += std::pow(mu, -static_cast<double>(i)) * w[i];
  return q;
}

double bias_delta(std::size_t d, std::size_t r, std::size_t level_size, double c_const) {
  const double rr = static_cast<double>(r);
  return c_const * rr * rr * std::log(static_cast<double>(d)) /
         std::cbrt(static_cast<double>(level_size));
}

BiasedB sample_biased_b(const PsdInstance& inst, std::size_t r, int sigma, double c_const,
                        std::uint64_t seed, std::optional<double> delta_override) {
  if (r == 0 || r > inst.r_tree)
    throw Error(ErrorCode::RadiusTooLarge, "support radius " + std::to_string(r) +
                                               " outside [1, " + std::to_string(inst.r_tree) +
                                               "]");
  BiasedB out;
  out.sigma = sigma >= 0 ? 1 : -1;
  out.r = r;
  out.delta_unclamped =
      delta_override ? *delta_override : bias_delta(inst.d, r, inst.tree.level_sizes[r], c_const);
  out.delta = std::clamp(out.delta_unclamped, 0.0, 1.0);
  out.clamped = out.delta != out.delta_unclamped;
  out.values.assign(inst.n, 0.0);
  CounterRng rng(seed, StreamRole::Experiment, 0);
  const double keep = (1.0 + out.delta) / 2.0;
  for (Vertex v = 0; v < inst.n; ++v) {
    if (inst.tree.level[v] != static_cast<int>(r)) continue;
    const double aligned = out.sigma * inst.tree.sign[v];
    out.values[v] = rng.uniform() < keep ? aligned : -aligned;
  }
  return out;
}

SignRecoveryReport run_sign_recovery_experiment(const PsdInstance& inst, std::size_t r,
                                                double c_const, std::size_t trials,
                                                std::uint64_t seed,
                                                std::optional<double> delta_override) {
  SignRecoveryReport rep;
  rep.r = r;
  rep.mu = inst.mu;
  rep.q = q_value(inst.d, r, inst.mu);
  rep.q_upper = q_upper_index(r, inst.mu);
  std::size_t recovered = 0, band = 0, bound = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    const std::uint64_t ts = derive_seed(seed, StreamRole::Experiment, k);
    const int sigma = CounterRng(ts, StreamRole::Experiment, 1).coin() ? 1 : -1;
    const BiasedB b = sample_biased_b(inst, r, sigma, c_const, ts, delta_override);
    rep.delta = b.delta;
    rep.delta_unclamped = b.delta_unclamped;
    rep.clamped = b.clamped;
    const auto x = exact_solve(inst.m_matrix, b.values);

    SignRecoveryTrial t;
    t.sigma = sigma;
    t.x_w = x[inst.w_hat];
    for (double v : x) t.x_inf = std::max(t.x_inf, std::abs(v));
    const double unit = b.delta * rep.q / inst.mu;
    t.recovered = (t.x_w > 0.0 && sigma > 0) || (t.x_w < 0.0 && sigma < 0);
    if (unit > 0.0) {
      t.x_w_ratio = t.x_w / unit;
      t.x_inf_ratio = t.x_inf / unit;
      t.in_band = std::abs(t.x_w_ratio - sigma) < 0.5;
      t.norm_bound = t.x_inf <= 2.0 * unit;
    }
    recovered += t.recovered;
    band += t.in_band;
    bound += t.norm_bound;
    rep.trials.push_back(t);
  }
  const double tt = trials ? static_cast<double>(trials) : 1.0;
  rep.recovery_rate = static_cast<double>(recovered) / tt;
  rep.band_rate = static_cast<double>(band) / tt;
  rep.norm_bound_rate = static_cast<double>(bound) / tt;
  return rep;
}

std::vector<double> probe_complexity_curve(double delta, std::span<const std::size_t> sample_counts,
                                           std::size_t trials, std::uint64_t seed) {
  if (!(delta >= 0.0 && delta <= 1.0))
    throw Error(ErrorCode::BadBounds, "bias must lie in [0, 1]");
  std::vector<double> rates;
  const double p_plus = (1.0 + delta) / 2.0;
  for (std::size_t j = 0; j < sample_counts.size(); ++j) {
    const std::size_t m = sample_counts[j];
    const std::uint64_t js = derive_seed(seed, StreamRole::Experiment, j);
    std::size_t wins = 0;
    for (std::size_t k = 0; k < trials; ++k) {
      CounterRng rng(js, StreamRole::Experiment, k);
      long long sum = 0;
      for (std::size_t i = 0; i < m; ++i) sum += rng.uniform() < p_plus ? 1 : -1;
      if (sum > 0 || (sum == 0 && rng.coin())) ++wins;
    }
    rates.push_back(trials ? static_cast<double>(wins) / static_cast<double>(trials) : 0.0);
  }
  return rates;
}

KappaInstance build_kappa_instance(std::size_t n, std::size_t k, std::uint64_t seed,
                                   const KappaBuildOptions& options) {
  if (n % 4 != 0 || k == 0)
    throw Error(ErrorCode::PreconditionViolated, "need n divisible by 4 and k >= 1");
  const std::size_t half = n / 2;
  const std::size_t bridges = n / k;
  if (bridges < 1 || bridges > half)
    throw Error(ErrorCode::PreconditionViolated,
                "bridge count n/k = " + std::to_string(bridges) + " outside [1, n/2]");

  KappaInstance inst;
  inst.n = n;
  inst.k = k;
  inst.seed = seed;
  inst.x = random_expander(half, 3, derive_seed(seed, StreamRole::Construction, 0),
                           options.expander);

  CounterRng rng(seed, StreamRole::Construction, 1);
  std::vector<Vertex> c1(half);
  std::iota(c1.begin(), c1.end(), 0u);
  shuffle(c1.begin(), c1.end(), rng);
  c1.resize(bridges);
  std::sort(c1.begin(), c1.end());
  for (Vertex c : c1) inst.bridges.emplace_back(c, static_cast<Vertex>(c + half));

  std::vector<std::pair<Vertex, Vertex>> edges;
  for (const auto& [a, b] : inst.x.edges()) {
    edges.emplace_back(a, b);
    edges.emplace_back(static_cast<Vertex>(a + half), static_cast<Vertex>(b + half));
  }
  std::vector<bool> bridged(n, false);
  for (const auto& [a, b] : inst.bridges) {
    edges.emplace_back(a, b);
    bridged[a] = bridged[b] = true;
  }
  for (Vertex v = 0; v < n; ++v)
    if (!bridged[v]) edges.emplace_back(v, v);
  inst.padded = RegularGraph::from_edges(n, edges);

  inst.part.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    const std::size_t local = v % half;
    inst.part[v] = static_cast<std::uint8_t>((v < half ? 0 : 2) + (local < half / 2 ? 0 : 1));
  }
  if (options.measure_kappa) inst.kappa_measured = condition_number(SddMatrix::laplacian(inst.padded));
  return inst;
}

double default_bias(std::size_t n, std::size_t k) {
  return std::min(0.5, std::sqrt(std::log(static_cast<double>(n))) / static_cast<double>(k));
}

namespace {

/// Fills the free part with independent +-1 draws (P(+1) = p_plus) and gives
/// the constrained part exactly `plus_target(free_plus, free_minus)` entries
/// equal to +1 at uniformly random positions.
template <class Target>
void fill_pair(const KappaInstance& inst, std::uint8_t free_part, std::uint8_t bound_part,
               double p_plus, Target plus_target, CounterRng& rng, std::vector<double>& b) {
  std::vector<Vertex> free_v, bound_v;
  for (Vertex v = 0; v < inst.n; ++v) {
    if (inst.part[v] == free_part) free_v.push_back(v);
    if (inst.part[v] == bound_part) bound_v.push_back(v);
  }
  if (free_v.size() != bound_v.size())
    throw Error(ErrorCode::InfeasibleConditioning, "parts have different sizes");
  std::size_t plus = 0;
  for (Vertex v : free_v) {
    b[v] = rng.uniform() < p_plus ? 1.0 : -1.0;
    plus += b[v] > 0.0;
  }
  const std::size_t want = plus_target(plus, free_v.size() - plus);
  if (want > bound_v.size())
    throw Error(ErrorCode::InfeasibleConditioning, "constrained part too small");
  shuffle(bound_v.begin(), bound_v.end(), rng);
  for (std::size_t i = 0; i < bound_v.size(); ++i) b[bound_v[i]] = i < want ? 1.0 : -1.0;
}

}  // namespace

std::vector<double> sample_balanced_b(const KappaInstance& inst, std::uint64_t seed) {
  std::vector<double> b(inst.n, 0.0);
  CounterRng rng(seed, StreamRole::Experiment, 0);
  const auto minus_count = [](std::size_t, std::size_t minus) { return minus; };
  fill_pair(inst, 0, 1, 0.5, minus_count, rng, b);
  fill_pair(inst, 2, 3, 0.5, minus_count, rng, b);
  return b;
}

std::vector<double> sample_unbalanced_b(const KappaInstance& inst, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::BadBounds, "bias must lie in [0, 1]");
  std::vector<double> b(inst.n, 0.0);
  CounterRng rng(seed, StreamRole::Experiment, 0);
  const auto plus_count = [](std::size_t plus, std::size_t) { return plus; };
  fill_pair(inst, 0, 1, 0.5 + p / 2.0, plus_count, rng, b);
  fill_pair(inst, 2, 3, 0.5 - p / 2.0, plus_count, rng, b);
  return b;
}

BridgeGapReport run_bridge_gap_experiment(const KappaInstance& inst, double p, std::size_t trials,
                                          std::uint64_t seed, std::optional<double> threshold) {
  BridgeGapReport rep;
  rep.p = p;
  rep.threshold = threshold.value_or(std::sqrt(std::log(static_cast<double>(inst.n))));
  rep.series_terms = 4 * static_cast<std::size_t>(
                             std::ceil(static_cast<double>(inst.k) *
                                       std::log(static_cast<double>(inst.n))));

  const auto solve = [&](std::vector<double> b) {
    const double mean = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(b.size());
    for (auto& v : b) v -= mean;
    return std::make_pair(exact_solve_laplacian(inst.padded, b), b);
  };
  const auto stats = [&](const std::vector<double>& x) {
    BridgeGapStats s;
    std::size_t above = 0;
    for (const auto& [a, c] : inst.bridges) {
      const double gap = std::abs(x[a] - x[c]);
      s.max_gap = std::max(s.max_gap, gap);
      s.mean_gap += gap;
      above += gap > rep.threshold;
    }
    const double m = static_cast<double>(inst.bridges.size());
    s.mean_gap /= m;
    s.fraction_above = static_cast<double>(above) / m;
    return s;
  };

  std::vector<double> bal_max, unb_max;
  rep.unbalanced_mean_min = trials ? std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t k = 0; k < trials; ++k) {
    const std::uint64_t ts = derive_seed(seed, StreamRole::Experiment, k);
    BridgeGapTrial t;
    t.balanced = stats(solve(sample_balanced_b(inst, derive_seed(ts, StreamRole::Experiment, 0))).first);
    const auto [xu, bu] =
        solve(sample_unbalanced_b(inst, p, derive_seed(ts, StreamRole::Experiment, 1)));
    t.unbalanced = stats(xu);
    if (k == 0) {
      const auto xs = truncated_series(inst.padded, bu, rep.series_terms);
      double diff = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < xu.size(); ++i) {
        diff = std::max(diff, std::abs(xs[i] - xu[i]));
        scale = std::max(scale, std::abs(xu[i]));
      }
      rep.series_relative_error = scale > 0.0 ? diff / scale : 0.0;
    }
    rep.balanced_max = std::max(rep.balanced_max, t.balanced.max_gap);
    rep.unbalanced_max = std::max(rep.unbalanced_max, t.unbalanced.max_gap);
    rep.unbalanced_mean_min = std::min(rep.unbalanced_mean_min, t.unbalanced.mean_gap);
    bal_max.push_back(t.balanced.max_gap);
    unb_max.push_back(t.unbalanced.max_gap);
    rep.trials.push_back(t);
  }
  rep.balanced_max_median = median(bal_max);
  rep.unbalanced_max_median = median(unb_max);
  return rep;
}

void write_psd_instance(const std::filesystem::path& dir, const PsdInstance& inst,
                        const std::vector<BiasedB>& samples) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "g1.edges");
    write_edge_list(out, inst.g1);
  }
  {
    std::ofstream out(dir / "g2.edges");
    write_edge_list(out, inst.g2);
  }
  {
    std::ofstream out(dir / "m.mtx");
    write_matrix_market(out, inst.m_matrix);
  }
  nlohmann::ordered_json j;
  j["kind"] = "psd";
  j["seed"] = inst.seed;
  j["n"] = inst.n;
  j["d"] = inst.d;
  j["filter"] = filter_name(inst.filter);
  j["attempts"] = inst.attempts;
  j["g1_second_eigenvalue"] = inst.g1_second_eigenvalue;
  j["union_norm"] = inst.union_norm;
  j["mu"] = inst.mu;
  j["w_hat"] = inst.w_hat;
  j["r_tree"] = inst.r_tree;
  j["induced_radius"] = inst.tree.induced_radius;
  j["level_sizes"] = inst.tree.level_sizes;
  const auto& c = inst.m_matrix.certificates();
  j["certificates"] = {{"tree", true},
                       {"symmetric", c.symmetric},
                       {"positive_diagonal", c.positive_diagonal},
                       {"diagonally_dominant", c.diagonally_dominant}};
  auto arr = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::string name = "b" + std::to_string(i) + ".vec";
    std::ofstream out(dir / name);
    write_vector(out, samples[i].values);
    arr.push_back({{"file", name},
                   {"sigma", samples[i].sigma},
                   {"r", samples[i].r},
                   {"delta", samples[i].delta},
                   {"clamped", samples[i].clamped}});
  }
  j["samples"] = arr;
  write_text(dir / "manifest.json", dump_json(j) + "\n");
}

void write_kappa_instance(const std::filesystem::path& dir, const KappaInstance& inst,
                          const std::vector<std::pair<std::string, std::vector<double>>>& vectors) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "x.edges");
    write_edge_list(out, inst.x);
  }
  {
    std::ofstream out(dir / "bridges.edges");
    out << "# " << inst.bridges.size() << " bridges\n";
    for (const auto& [a, b] : inst.bridges) out << a << ' ' << b << '\n';
  }
  {
    std::ofstream out(dir / "union.edges");
    write_edge_list(out, inst.padded);
  }
  nlohmann::ordered_json j;
  j["kind"] = "kappa";
  j["seed"] = inst.seed;
  j["n"] = inst.n;
  j["k"] = inst.k;
  j["bridges"] = inst.bridges.size();
  j["kappa_measured"] = inst.kappa_measured;
  std::vector<std::size_t> sizes(4, 0);
  for (auto p : inst.part) ++sizes[p];
  j["part_sizes"] = sizes;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [name, values] : vectors) {
    const std::string file = name + ".vec";
    std::ofstream out(dir / file);
    write_vector(out, values);
    arr.push_back(file);
  }
  j["vectors"] = arr;
  write_text(dir / "manifest.json", dump_json(j) + "\n");
}

}  // namespace localsolve
