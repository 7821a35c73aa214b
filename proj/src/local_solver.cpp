#include "localsolve/local_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "localsolve/error.hpp"

namespace localsolve {

namespace {

struct LineageResult {
  double y = 0.0;
  double max_abs = 0.0;
  std::uint64_t steps = 0;
};

/// Accuracy target of the Hoeffding count, expressed for the per-lineage
/// sum Y in [-c s B, c s B]: the bound must be at most c s B / rho.
struct RangeModel {
  double rho;
  double c;
};

constexpr std::size_t kBlock = 1 << 15;

/// Adds sign * sum_{t<s} b(z_t) over one walk from `start` into r. A lazy walk
/// is simulated as a simple walk with geometric holding times, which has the
/// same law and reads b once per visit.
void walk_sum(const RegularGraph& g, const VectorOracle& b, Vertex start, std::size_t s,
              bool lazy, double sign, CounterRng& rng, std::uint64_t& pending, LineageResult& r) {
  Vertex z = start;
  if (!lazy) {
    for (std::size_t t = 0; t < s; ++t) {
      if (t > 0) z = step_uniform(g, z, rng);
      const double bz = b.probe_batched(z, pending);
      r.y += sign * bz;
      r.max_abs = std::max(r.max_abs, std::abs(bz));
    }
  } else {
    std::size_t t = 0;
    while (t < s) {
      const std::uint64_t stay = lazy_stay_count(rng);
      const std::size_t hold = stay >= s - t ? s - t : static_cast<std::size_t>(stay) + 1;
      const double bz = b.probe_batched(z, pending);
      r.y += sign * static_cast<double>(hold) * bz;
      r.max_abs = std::max(r.max_abs, std::abs(bz));
      t += hold;
      if (t < s) z = step_uniform(g, z, rng);
    }
  }
  r.steps += s - 1;
}

/// Runs lineages [first, last) and folds them, in lineage order, into a
/// Welford accumulator so the result does not depend on the thread count.
class LineageRunner {
 public:
  template <class Fn>
  void run(std::size_t first, std::size_t last, unsigned threads, const Fn& fn,
           const VectorOracle& b) {
    std::vector<LineageResult> buf;
    for (std::size_t lo = first; lo < last; lo += kBlock) {
      const std::size_t hi = std::min(last, lo + kBlock);
      buf.assign(hi - lo, {});
      const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(hi - lo)));
      auto work = [&](std::size_t a, std::size_t z) {
        std::uint64_t pending = 0;
        for (std::size_t i = a; i < z; ++i) buf[i - lo] = fn(i, pending);
        b.commit(pending);
        return pending;
      };
      if (t == 1) {
        probes_ += work(lo, hi);
      } else {
        std::vector<std::thread> pool;
        std::vector<std::uint64_t> counts(t, 0);
        const std::size_t chunk = (hi - lo + t - 1) / t;
        for (unsigned k = 0; k < t; ++k) {
          const std::size_t a = lo + k * chunk, z = std::min(hi, a + chunk);
          if (a >= z) continue;
          pool.emplace_back([&, k, a, z] { counts[k] = work(a, z); });
        }
        for (auto& th : pool) th.join();
        for (auto c : counts) probes_ += c;
      }
      for (const auto& r : buf) {
        ++count_;
        const double delta = r.y - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (r.y - mean_);
        max_abs_ = std::max(max_abs_, r.max_abs);
        steps_ += r.steps;
      }
    }
  }

  std::size_t count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const { return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0; }
  double max_abs() const { return max_abs_; }
  std::uint64_t steps() const { return steps_; }
  std::uint64_t probes() const { return probes_; }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double max_abs_ = 0.0;
  std::uint64_t steps_ = 0;
  std::uint64_t probes_ = 0;
};

template <class Fn>
Estimate run_lineages(const SolveParams& p, const RangeModel& model, double scale, const Fn& fn,
                      const VectorOracle& b, std::uint64_t seed) {
  const std::size_t distinct_before = b.distinct_probes();
  LineageRunner runner;
  const std::size_t cap = std::max<std::size_t>(1, p.ell);
  std::size_t rounds = 1;

  if (p.rule == SampleRule::Hoeffding) {
    runner.run(0, cap, p.threads, fn, b);
  } else {
    const double s = static_cast<double>(p.s);
    const double delta = p.failure_budget > 0.0 ? p.failure_budget : 1.0 / s;
    double log_term = 0.0;
    std::size_t ell0 = 0, planned_rounds = 1;
    for (int pass = 0; pass < 4; ++pass) {
      log_term = std::log(4.0 * static_cast<double>(planned_rounds) / delta);
      ell0 = 1 + static_cast<std::size_t>(std::ceil(14.0 * model.rho * log_term / 3.0));
      planned_rounds =
          ell0 < cap ? 1 + static_cast<std::size_t>(std::ceil(std::log2(
                               static_cast<double>(cap) / static_cast<double>(ell0))))
                     : 1;
    }
    std::size_t ell = std::min(ell0, cap);
    runner.run(0, ell, p.threads, fn, b);
    while (ell < cap) {
      const double b_hat = runner.max_abs();
      if (b_hat == 0.0) break;
      const double tau = model.c * s * b_hat / model.rho;
      const double spread =
          std::sqrt(2.0 * runner.variance() * log_term / static_cast<double>(ell));
      if (spread <= tau / 2.0) break;
      const std::size_t next = std::min(cap, 2 * ell);
      runner.run(ell, next, p.threads, fn, b);
      ell = next;
      ++rounds;
    }
  }

  Estimate e;
  e.value = scale * runner.mean();
  e.s = p.s;
  e.ell = runner.count();
  e.total_steps = runner.steps();
  e.probe_count = runner.probes();
  e.distinct_probes = b.distinct_probes() - distinct_before;
  e.seed = seed;
  e.rounds = rounds;
  return e;
}

void check_vertex(std::size_t n, Vertex v) {
  if (v >= n)
    throw Error(ErrorCode::BadVertexId,
                "vertex " + std::to_string(v) + " outside [0, " + std::to_string(n) + ")", v);
}

void check_oracle(std::size_t n, const VectorOracle& b) {
  if (b.n() != n)
    throw Error(ErrorCode::PreconditionViolated, "right-hand side has length " +
                                                     std::to_string(b.n()) + ", expected " +
                                                     std::to_string(n));
}

std::size_t ceil_count(double x) {
  if (!(x < 9e18)) throw Error(ErrorCode::BadBounds, "walk count overflows");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(x)));
}

}  // namespace

SolveParams plan_params_laplacian(std::size_t d, double mu2_lower, double epsilon,
                                  std::size_t b0_upper, const LaplacianPlanOptions& options) {
  if (d == 0) throw Error(ErrorCode::BadBounds, "degree must be positive");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::BadBounds, "epsilon must be positive");
  const double dd = static_cast<double>(d);

  SolveParams p;
  p.epsilon = epsilon;
  p.lazy = options.lazy;
  p.rule = options.rule;
  p.threads = options.threads;
  p.b0_upper = std::max<std::size_t>(1, b0_upper);
  const double d_eff = options.lazy ? 2.0 * dd : dd;
  if (!(mu2_lower > 0.0))
    throw Error(ErrorCode::BadBounds, "mu2 lower bound must be positive");
  mu2_lower = std::min(mu2_lower, d_eff);
  p.mu2_lower = mu2_lower;
  p.internal_epsilon =
      options.target == Target::Coordinate ? epsilon * d_eff / (2.0 * dd) : epsilon;

  const double eps = p.internal_epsilon;
  if (d_eff - mu2_lower <= 0.0) {
    p.s = 1;
  } else {
    const double num = std::log(2.0 * std::sqrt(2.0) / eps * (d_eff / mu2_lower) *
                                std::sqrt(static_cast<double>(p.b0_upper)));
    const double den = std::log(d_eff / (d_eff - mu2_lower));
    p.s = num <= 0.0 ? 1 : ceil_count(num / den);
  }
  const double s = static_cast<double>(p.s);
  p.ell = ceil_count(32.0 * s * s / (eps * eps) * std::log(4.0 * s * s));
  p.failure_budget = options.failure_budget.value_or(1.0 / s);
  return p;
}

SolveParams plan_params_sdd(double lambda_tilde_upper, double epsilon, std::size_t b0_upper,
                            double d_max, double d_min, const SddPlanOptions& options) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::BadBounds, "epsilon must be positive");
  if (!(lambda_tilde_upper >= 0.0 && lambda_tilde_upper < 1.0))
    throw Error(ErrorCode::BadBounds,
                "lambda~ bound " + std::to_string(lambda_tilde_upper) + " outside [0, 1)");
  if (!(d_min > 0.0) || d_max < d_min)
    throw Error(ErrorCode::BadBounds, "diagonal range must satisfy 0 < d_min <= d_max");

  SolveParams p;
  p.epsilon = epsilon;
  p.internal_epsilon = epsilon;
  p.lambda_tilde_upper = lambda_tilde_upper;
  p.b0_upper = std::max<std::size_t>(1, b0_upper);
  p.lazy = true;
  p.rule = options.rule;
  p.threads = options.threads;
  if (lambda_tilde_upper == 0.0) {
    p.s = 1;
  } else {
    const double num = std::log(2.0 / epsilon / (1.0 - lambda_tilde_upper) *
                                std::sqrt(static_cast<double>(p.b0_upper)) *
                                std::sqrt(d_max / d_min));
    const double den = std::log(1.0 / lambda_tilde_upper);
    p.s = num <= 0.0 ? 1 : ceil_count(num / den);
  }
  const double s = static_cast<double>(p.s);
  p.ell = ceil_count(8.0 * s * s / (epsilon * epsilon) * std::log(2.0 * s * s));
  p.failure_budget = options.failure_budget.value_or(1.0 / s);
  return p;
}

double mu2_from_kappa(std::size_t d, double kappa_bar) {
  if (!(kappa_bar >= 1.0)) throw Error(ErrorCode::BadBounds, "kappa bound must be at least 1");
  return static_cast<double>(d) / kappa_bar;
}

double lambda_tilde_from_kappa(double kappa_bar) {
  if (!(kappa_bar >= 1.0)) throw Error(ErrorCode::BadBounds, "kappa bound must be at least 1");
  return 1.0 - 1.0 / (2.0 * kappa_bar);
}

Estimate estimate_pair_difference(const RegularGraph& g, const VectorOracle& b, Vertex u,
                                  Vertex v, const SolveParams& p, std::uint64_t seed) {
  check_vertex(g.n(), u);
  check_vertex(g.n(), v);
  check_oracle(g.n(), b);
  if (u == v) {
    Estimate e;
    e.s = p.s;
    e.seed = seed;
    return e;
  }
  const std::size_t s = p.s;
  const bool lazy = p.lazy;
  auto fn = [&](std::size_t i, std::uint64_t& pending) {
    CounterRng ru(seed, StreamRole::WalkFromU, i);
    CounterRng rv(seed, StreamRole::WalkFromV, i);
    LineageResult r;
    walk_sum(g, b, u, s, lazy, 1.0, ru, pending, r);
    walk_sum(g, b, v, s, lazy, -1.0, rv, pending, r);
    return r;
  };
  const double d_eff = static_cast<double>(g.degree()) * (lazy ? 2.0 : 1.0);
  const RangeModel model{8.0 * static_cast<double>(s) / p.internal_epsilon, 4.0};
  return run_lineages(p, model, 1.0 / d_eff, fn, b, seed);
}

Estimate estimate_coordinate_laplacian(const RegularGraph& g, const VectorOracle& b, Vertex u,
                                       const SolveParams& p, std::uint64_t seed) {
  check_vertex(g.n(), u);
  check_oracle(g.n(), b);
  const std::size_t s = p.s;
  const bool lazy = p.lazy;
  auto fn = [&](std::size_t i, std::uint64_t& pending) {
    CounterRng rng(seed, StreamRole::WalkFromU, i);
    LineageResult r;
    walk_sum(g, b, u, s, lazy, 1.0, rng, pending, r);
    return r;
  };
  const double d_eff = static_cast<double>(g.degree()) * (lazy ? 2.0 : 1.0);
  const RangeModel model{8.0 * static_cast<double>(s) / p.internal_epsilon, 2.0};
  return run_lineages(p, model, 1.0 / d_eff, fn, b, seed);
}

Estimate estimate_coordinate_sdd(const SddMatrix& m, const VectorOracle& b, Vertex u,
                                 const SolveParams& p, std::uint64_t seed) {
  check_vertex(m.n(), u);
  check_oracle(m.n(), b);
  const std::size_t s = p.s;
  auto fn = [&](std::size_t i, std::uint64_t& pending) {
    CounterRng rng(seed, StreamRole::WalkFromU, i);
    LineageResult r;
    Vertex z = u;
    int sigma = 1;
    for (std::size_t t = 0; t < s; ++t) {
      if (t > 0) {
        const auto o = step_lazy_signed(m, z, rng);
        ++r.steps;
        if (o.kind == WalkOutcome::Kind::Terminated) break;
        sigma *= o.sign;
        z = o.vertex;
      }
      const double bz = b.probe_batched(z, pending) / m.diag(z);
      r.y += sigma * bz;
      r.max_abs = std::max(r.max_abs, std::abs(bz));
    }
    return r;
  };
  const RangeModel model{4.0 * static_cast<double>(s) / p.internal_epsilon, 2.0};
  return run_lineages(p, model, 0.5, fn, b, seed);
}

Estimate amplify_median(std::size_t rounds, std::uint64_t seed,
                        const std::function<Estimate(std::uint64_t)>& run) {
  if (rounds == 0) throw Error(ErrorCode::PreconditionViolated, "need at least one round");
  std::vector<double> values;
  Estimate out;
  out.seed = seed;
  for (std::size_t r = 0; r < rounds; ++r) {
    const Estimate e = run(derive_seed(seed, StreamRole::Amplify, r));
    values.push_back(e.value);
    out.s = e.s;
    out.ell += e.ell;
    out.total_steps += e.total_steps;
    out.probe_count += e.probe_count;
    out.distinct_probes += e.distinct_probes;
    out.rounds += e.rounds;
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  out.value = values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  return out;
}

PowerTable preprocess_powers(const RegularGraph& g, Vertex u, std::size_t s, bool lazy,
                             std::size_t memory_budget_bytes) {
  check_vertex(g.n(), u);
  if (s == 0) throw Error(ErrorCode::PreconditionViolated, "s must be positive");
  const double need = static_cast<double>(s) * static_cast<double>(g.n()) *
                      static_cast<double>(sizeof(std::pair<Vertex, double>) + 3 * sizeof(double));
  if (need > static_cast<double>(memory_budget_bytes))
    throw Error(ErrorCode::MemoryBudgetExceeded,
                "power table needs about " + std::to_string(static_cast<std::size_t>(need)) +
                    " bytes");

  PowerTable table;
  table.source = u;
  table.s = s;
  table.walk_degree = g.degree() * (lazy ? 2 : 1);
  const double inv_d = 1.0 / static_cast<double>(g.degree());
  std::vector<double> cur(g.n(), 0.0), next(g.n(), 0.0);
  cur[u] = 1.0;
  for (std::size_t t = 0; t < s; ++t) {
    std::vector<std::pair<Vertex, double>> row;
    std::vector<double> weights;
    for (Vertex v = 0; v < g.n(); ++v)
      if (cur[v] > 0.0) {
        row.emplace_back(v, cur[v]);
        weights.push_back(cur[v]);
      }
    table.samplers.emplace_back(weights);
    table.rows.push_back(std::move(row));
    if (t + 1 == s) break;
    std::fill(next.begin(), next.end(), 0.0);
    for (const auto& [v, pv] : table.rows.back()) {
      const double share = (lazy ? 0.5 : 1.0) * pv * inv_d;
      for (Vertex w : g.neighbors(v)) next[w] += share;
      if (lazy) next[v] += 0.5 * pv;
    }
    std::swap(cur, next);
  }
  return table;
}

std::size_t preprocessing_sample_count(std::size_t s, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::BadBounds, "epsilon must be positive");
  const double sd = static_cast<double>(s);
  return ceil_count(8.0 * sd * sd / (epsilon * epsilon) * std::log(8.0));
}

Estimate estimate_with_preprocessing(const PowerTable& table, const VectorOracle& b,
                                     double epsilon, std::uint64_t seed) {
  const std::size_t m = preprocessing_sample_count(table.s, epsilon);
  const std::size_t distinct_before = b.distinct_probes();
  const double scale = static_cast<double>(table.s) / static_cast<double>(table.walk_degree);
  std::uint64_t pending = 0;
  double mean = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    CounterRng rng(seed, StreamRole::Preprocessed, j);
    const auto t = static_cast<std::size_t>(rng.below(table.s));
    const Vertex z = table.rows[t][table.samplers[t].sample(rng)].first;
    const double x = scale * b.probe_batched(z, pending);
    mean += (x - mean) / static_cast<double>(j + 1);
  }
  b.commit(pending);
  Estimate e;
  e.value = mean;
  e.s = table.s;
  e.ell = m;
  e.probe_count = pending;
  e.distinct_probes = b.distinct_probes() - distinct_before;
  e.seed = seed;
  e.rounds = 1;
  return e;
}

}  // namespace localsolve
