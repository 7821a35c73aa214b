// Acceptance harness: one verdict line per criterion.
//
//   acceptance [c01 ... c10] [--expect PASS|FAIL] [--report-dir DIR]
//
// Exit status is 0 when every selected verdict equals the expected one
// (PASS by default).

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "json.hpp"
#include "localsolve/applications.hpp"
#include "localsolve/error.hpp"
#include "localsolve/exact_oracle.hpp"
#include "localsolve/generators.hpp"
#include "localsolve/hard_instances.hpp"
#include "localsolve/json_output.hpp"
#include "localsolve/local_solver.hpp"

using namespace localsolve;
using json = nlohmann::ordered_json;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
  json payload = json::object();
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---------------------------------------------------------------------------
// Independent dense references

Eigen::MatrixXd dense_adjacency(const RegularGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.n());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Vertex v = 0; v < g.n(); ++v)
    for (Vertex w : g.neighbors(v)) a(v, w) += 1.0;
  return a;
}

Eigen::MatrixXd dense_laplacian(const RegularGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.n());
  return static_cast<double>(g.degree()) * Eigen::MatrixXd::Identity(n, n) - dense_adjacency(g);
}

Eigen::MatrixXd dense_of(const SddMatrix& s) {
  const auto n = static_cast<Eigen::Index>(s.n());
  const auto d = s.to_dense();
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      d.data(), n, n);
}

Eigen::VectorXd eigenvalues(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues();
}

std::vector<double> pinv_solve(const Eigen::MatrixXd& m, const std::vector<double>& b) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  Eigen::VectorXd inv = es.eigenvalues();
  const double scale = inv.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < inv.size(); ++i)
    inv(i) = std::abs(inv(i)) > 1e-10 * scale ? 1.0 / inv(i) : 0.0;
  const Eigen::VectorXd x =
      es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose() *
      Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
  return {x.data(), x.data() + x.size()};
}

/// Second smallest Laplacian eigenvalue of a connected graph.
double dense_mu2(const RegularGraph& g) { return eigenvalues(dense_laplacian(g))(1); }

double norm2(const std::vector<double>& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed, StreamRole::Experiment, 77);
  std::vector<double> v(n);
  for (auto& x : v) x = 2.0 * rng.uniform() - 1.0;
  return v;
}

RegularGraph connected_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  for (std::uint64_t k = 0;; ++k) {
    auto g = random_regular_graph(n, d, derive_seed(seed, StreamRole::Construction, k));
    if (g.component_count() == 1) return g;
  }
}

// ---------------------------------------------------------------------------
// Fixtures

std::vector<std::pair<std::string, RegularGraph>> graph_fixtures() {
  std::vector<std::pair<std::string, RegularGraph>> f;
  f.emplace_back("K4", complete_graph(4));
  f.emplace_back("K5", complete_graph(5));
  f.emplace_back("C3", cycle_graph(3));
  f.emplace_back("C4", cycle_graph(4));
  f.emplace_back("C7", cycle_graph(7));
  f.emplace_back("C4+loop", cycle_graph(4).with_self_loops(1));
  const std::vector<std::pair<std::size_t, std::size_t>> shapes{
      {20, 3}, {50, 3}, {64, 4}, {100, 4}, {128, 3}, {150, 5}, {180, 4}, {200, 3}, {200, 6}};
  for (std::size_t i = 0; i < shapes.size(); ++i)
    f.emplace_back(fmt("rr%zu_%zu", shapes[i].first, shapes[i].second),
                   connected_regular(shapes[i].first, shapes[i].second, 100 + i));
  return f;
}

/// Random sparse symmetric matrix with both off-diagonal signs. `slack` = 0
/// makes every row tight.
SddMatrix random_sdd(std::size_t n, std::size_t per_row, double slack, double negative_share,
                     std::uint64_t seed) {
  CounterRng rng(seed, StreamRole::Construction, 5);
  std::map<std::pair<Vertex, Vertex>, double> off;
  for (Vertex i = 0; i < n; ++i)
    for (std::size_t k = 0; k < per_row; ++k) {
      const auto j = static_cast<Vertex>(rng.below(n));
      if (j == i) continue;
      const double w = 0.1 + rng.uniform();
      off[{std::min(i, j), std::max(i, j)}] = rng.uniform() < negative_share ? -w : w;
    }
  std::vector<double> diag(n, 0.0);
  std::vector<Triplet> t;
  for (const auto& [ij, w] : off) {
    t.push_back({ij.first, ij.second, w});
    diag[ij.first] += std::abs(w);
    diag[ij.second] += std::abs(w);
  }
  for (Vertex i = 0; i < n; ++i) {
    const double extra = diag[i] == 0.0 ? 1.0 : diag[i] * slack;
    t.push_back({i, i, diag[i] + extra});
  }
  return SddMatrix::from_triplets(n, t);
}

std::vector<std::pair<std::string, SddMatrix>> sdd_fixtures() {
  std::vector<std::pair<std::string, SddMatrix>> f;
  const std::vector<std::size_t> sizes{10, 30, 60, 100, 150, 200, 40, 80, 120, 200};
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double slack = i % 3 == 0 ? 0.0 : 0.05 * static_cast<double>(i);
    const double neg = i % 2 == 0 ? 1.0 : 0.5;
    f.emplace_back(fmt("sdd%zu_%s", sizes[i], slack == 0.0 ? "tight" : "strict"),
                   random_sdd(sizes[i], 3, slack, neg, 200 + i));
  }
  return f;
}

/// Graphs with n <= 8, d <= 4 for the enumeration check.
std::vector<std::pair<std::string, RegularGraph>> tiny_graphs() {
  std::vector<std::pair<std::string, RegularGraph>> f;
  f.emplace_back("C3", cycle_graph(3));
  f.emplace_back("C4", cycle_graph(4));
  f.emplace_back("C5", cycle_graph(5));
  f.emplace_back("C8", cycle_graph(8));
  f.emplace_back("K4", complete_graph(4));
  f.emplace_back("K5", complete_graph(5));
  std::vector<std::pair<Vertex, Vertex>> cube;
  for (Vertex v = 0; v < 8; ++v)
    for (Vertex bit = 1; bit < 8; bit <<= 1)
      if ((v ^ bit) > v) cube.emplace_back(v, v ^ bit);
  f.emplace_back("Q3", RegularGraph::from_edges(8, cube));
  f.emplace_back("C4+2loops", cycle_graph(4).with_self_loops(2));
  f.emplace_back("rr8_3", connected_regular(8, 3, 9));
  f.emplace_back("rr6_4", connected_regular(6, 4, 10));
  return f;
}

std::vector<std::pair<std::string, SddMatrix>> tiny_signed() {
  std::vector<std::pair<std::string, SddMatrix>> f;
  for (std::size_t i = 0; i < 10; ++i) {
    const std::size_t n = 3 + i % 6;
    const double slack = i % 2 == 0 ? 0.0 : 0.3;
    f.emplace_back(fmt("signed%zu", i), random_sdd(n, 2, slack, 0.5, 300 + i));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Criteria

Verdict c01() {
  Stopwatch sw;
  Verdict v;
  bool ok = true;
  double worst_residual = 0.0, worst_series = 0.0;
  json rows = json::array();
  for (const auto& [name, g] : graph_fixtures()) {
    auto b = random_vector(g.n(), g.n() * 31 + g.degree());
    const double mean = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(b.size());
    for (auto& x : b) x -= mean;
    const auto x = exact_solve_laplacian(g, b);
    std::vector<double> lx(g.n());
    g.multiply_laplacian(x, lx);
    for (std::size_t i = 0; i < lx.size(); ++i) lx[i] -= b[i];
    const double residual = norm2(lx) / norm2(b);
    worst_residual = std::max(worst_residual, residual);

    // Lazy copy (same Laplacian) when A has eigenvalues below -(d - mu2).
    const double mu2 = dense_mu2(g);
    const auto ev = eigenvalues(dense_adjacency(g));
    const double d = static_cast<double>(g.degree());
    const bool lazy = ev(0) < -(d - mu2) - 1e-12;
    const RegularGraph walk_graph = lazy ? g.with_self_loops(g.degree()) : g;
    const double dw = static_cast<double>(walk_graph.degree());
    double ratio = 0.0;
    for (std::size_t s = 1; s <= 50; ++s) {
      auto xs = truncated_series(walk_graph, b, s);
      for (std::size_t i = 0; i < xs.size(); ++i) xs[i] -= x[i];
      // Plus a roundoff floor.
      const double bound =
          std::sqrt(2.0) * std::pow(1.0 - mu2 / dw, double(s)) / mu2 * norm2(b) +
          1e-12 * norm2(b) / mu2;
      ratio = std::max(ratio, norm2(xs) / bound);
    }
    worst_series = std::max(worst_series, ratio);
    ok &= residual <= 1e-9 && ratio <= 1.0;
    rows.push_back({{"fixture", name}, {"residual", residual}, {"series_error_over_bound", ratio},
                    {"lazy_series", lazy}});
  }
  for (const auto& [name, s] : sdd_fixtures()) {
    const auto y = random_vector(s.n(), s.n() * 17 + 3);
    std::vector<double> b(s.n());
    s.multiply(y, b);
    const auto x = exact_solve(s, b);
    std::vector<double> sx(s.n());
    s.multiply(x, sx);
    for (std::size_t i = 0; i < sx.size(); ++i) sx[i] -= b[i];
    const double residual = norm2(sx) / norm2(b);
    worst_residual = std::max(worst_residual, residual);
    ok &= residual <= 1e-9;
    rows.push_back({{"fixture", name}, {"residual", residual}});
  }
  const double t = sw.seconds();
  v.pass = ok && rows.size() == 25 && t < 60.0;
  v.detail = fmt("%zu fixtures, worst residual/|b| %.2e (<= 1e-9), worst series error/bound %.3f "
                 "(<= 1, floor 1e-12 |b|/mu2) over s in [1,50], %.1fs (< 60s)",
                 rows.size(), worst_residual, worst_series, t);
  v.payload["fixtures"] = rows;
  return v;
}

/// E[b(z_t)] by enumerating every walk of length t with its probability.
double enumerate_walk(const RegularGraph& g, bool lazy, Vertex u, std::size_t t,
                      const std::vector<double>& b) {
  if (t == 0) return b[u];
  double acc = 0.0;
  for (const auto& [w, p] : transition_outcomes(g, u, lazy))
    acc += p * enumerate_walk(g, lazy, w, t - 1, b);
  return acc;
}

/// E[sigma_t b(z_t) / d(z_t)] over the signed lazy walk; terminated walks add 0.
double enumerate_signed(const SddMatrix& s, Vertex u, std::size_t t, const std::vector<double>& b) {
  if (t == 0) return b[u] / s.diag(u);
  double acc = 0.0;
  for (const auto& [o, p] : lazy_signed_outcomes(s, u)) {
    if (o.kind == WalkOutcome::Kind::Terminated) continue;
    acc += p * o.sign * enumerate_signed(s, o.vertex, t - 1, b);
  }
  return acc;
}

Verdict c02() {
  Stopwatch sw;
  Verdict v;
  double worst = 0.0;
  std::size_t checks = 0;
  json rows = json::array();
  for (const auto& [name, g] : tiny_graphs()) {
    const auto b = random_vector(g.n(), g.n() + 5 * g.degree());
    const Eigen::Map<const Eigen::VectorXd> bv(b.data(), static_cast<Eigen::Index>(b.size()));
    const auto n = static_cast<Eigen::Index>(g.n());
    double fixture_worst = 0.0;
    for (bool lazy : {false, true}) {
      const Eigen::MatrixXd p =
          lazy ? Eigen::MatrixXd(0.5 * (Eigen::MatrixXd::Identity(n, n) +
                                        dense_adjacency(g) / static_cast<double>(g.degree())))
               : Eigen::MatrixXd(dense_adjacency(g) / static_cast<double>(g.degree()));
      Eigen::VectorXd pt = bv;
      for (std::size_t t = 0; t <= 6; ++t) {
        for (Vertex u = 0; u < g.n(); ++u) {
          const double err = std::abs(enumerate_walk(g, lazy, u, t, b) - pt(u));
          fixture_worst = std::max(fixture_worst, err);
          ++checks;
        }
        pt = p * pt;
      }
    }
    worst = std::max(worst, fixture_worst);
    rows.push_back({{"fixture", name}, {"max_error", fixture_worst}});
  }
  double worst_signed = 0.0;
  for (const auto& [name, s] : tiny_signed()) {
    const auto b = random_vector(s.n(), s.n() * 3 + 1);
    const auto n = static_cast<Eigen::Index>(s.n());
    const Eigen::MatrixXd m = dense_of(s);
    const Eigen::VectorXd dh = m.diagonal().cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd st = dh.asDiagonal() * m * dh.asDiagonal();
    const Eigen::MatrixXd bt = Eigen::MatrixXd::Identity(n, n) - 0.5 * st;
    Eigen::VectorXd pt =
        dh.asDiagonal() * Eigen::Map<const Eigen::VectorXd>(b.data(), n);
    double fixture_worst = 0.0;
    for (std::size_t t = 0; t <= 6; ++t) {
      const Eigen::VectorXd expect = dh.asDiagonal() * pt;
      for (Vertex u = 0; u < s.n(); ++u) {
        const double err = std::abs(enumerate_signed(s, u, t, b) - expect(u));
        fixture_worst = std::max(fixture_worst, err);
        ++checks;
      }
      pt = bt * pt;
    }
    worst_signed = std::max(worst_signed, fixture_worst);
    rows.push_back({{"fixture", name}, {"max_error", fixture_worst}});
  }
  const double t = sw.seconds();
  v.pass = worst <= 1e-12 && worst_signed <= 1e-12 && t < 60.0;
  v.detail = fmt("%zu coordinate checks, worst |E - e_u^T P^t b| %.2e (graphs), %.2e (signed SDD), "
                 "tolerance 1e-12, %.1fs (< 60s)",
                 checks, worst, worst_signed, t);
  v.payload["fixtures"] = rows;
  return v;
}

struct StatisticalRun {
  json payload;
  std::size_t failures = 0;
  std::size_t seeds = 0;
  std::size_t s = 0;
  std::size_t locality_violations = 0;
  std::size_t max_distinct = 0;
};

/// c03 workload: b = e_i - e_j on a fixed expander, query vertex
/// drawn per seed.
StatisticalRun statistical_contract(std::size_t seeds, unsigned threads) {
  const std::size_t n = 1024;
  const auto g = random_expander(n, 3, 7);
  const double mu2 = dense_mu2(g);
  const Vertex i = 0, j = static_cast<Vertex>(n / 2);
  std::vector<double> bd(n, 0.0);
  bd[i] = 1.0;
  bd[j] = -1.0;
  const auto x = pinv_solve(dense_laplacian(g), bd);
  const double xinf = inf_norm(x);
  LaplacianPlanOptions o;
  o.threads = threads;
  const auto p = plan_params_laplacian(3, mu2, 0.1, 2, o);
  const VectorOracle b(n, {{i, 1.0}, {j, -1.0}});

  StatisticalRun run;
  run.s = p.s;
  run.seeds = seeds;
  json rows = json::array();
  for (std::size_t seed = 0; seed < seeds; ++seed) {
    const auto u = static_cast<Vertex>(CounterRng(seed, StreamRole::Experiment, 0).below(n));
    const auto e = estimate_coordinate_laplacian(g, b, u, p, seed);
    const double err = std::abs(e.value - x[u]);
    const bool fail = err > 0.1 * xinf;
    run.failures += fail;
    const std::size_t reach = std::min(n, g.ball_size(u, p.s));
    run.locality_violations += e.distinct_probes > reach;
    run.max_distinct = std::max(run.max_distinct, e.distinct_probes);
    rows.push_back({{"seed", seed},
                    {"u", u},
                    {"estimate", e.value},
                    {"exact", x[u]},
                    {"failed", fail},
                    {"ell", e.ell},
                    {"distinct_probes", e.distinct_probes}});
  }
  run.payload["mu2"] = mu2;
  run.payload["s"] = p.s;
  run.payload["x_inf"] = xinf;
  run.payload["runs"] = rows;
  return run;
}

Verdict c03() {
  Stopwatch sw;
  Verdict v;
  const auto run = statistical_contract(300, 1);
  const double rate = double(run.failures) / double(run.seeds);
  const double limit = 1.0 / double(run.s) + 0.05;
  const double t = sw.seconds();
  v.pass = rate <= limit && t < 300.0;
  v.detail = fmt("n=1024 d=3 expander, eps=0.1, s=%zu: %zu/%zu failures, rate %.4f (<= 1/s+0.05 = "
                 "%.4f), %.1fs (< 300s)",
                 run.s, run.failures, run.seeds, rate, limit, t);
  v.payload = run.payload;
  return v;
}

Verdict c04() {
  Stopwatch sw;
  Verdict v;
  // Locality on a 100-seed slice of the c03 workload.
  const auto run = statistical_contract(100, 1);
  // Same (d, mu2 bound, eps) at three sizes.
  const std::vector<std::size_t> sizes{1u << 10, 1u << 12, 1u << 14};
  std::vector<RegularGraph> graphs;
  double lambda = 0.0;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    graphs.push_back(random_expander(sizes[k], 3, 40 + k));
    lambda = std::max(lambda, second_adjacency_eigenvalue(graphs.back()));
  }
  const double mu2_bound = 3.0 - lambda;
  const auto p = plan_params_laplacian(3, mu2_bound, 0.1, 2);
  std::vector<std::size_t> distinct;
  json rows = json::array();
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const std::size_t n = sizes[k];
    const VectorOracle b(n, {{0, 1.0}, {n / 2, -1.0}});
    const auto e = estimate_coordinate_laplacian(graphs[k], b, 1, p, 5);
    distinct.push_back(e.distinct_probes);
    rows.push_back({{"n", n}, {"distinct_probes", e.distinct_probes}, {"ell", e.ell},
                    {"ball", graphs[k].ball_size(1, p.s)}});
  }
  const double growth = double(distinct.back()) / double(distinct.front());
  const double t = sw.seconds();
  v.pass = run.locality_violations == 0 && growth <= 2.0 && t < 600.0;
  v.detail = fmt("locality violations %zu/%zu; mu2 bound %.4f, s=%zu; distinct probes n=2^10: %zu, "
                 "2^12: %zu, 2^14: %zu, growth %.2fx (<= 2x); %.1fs (< 600s)",
                 run.locality_violations, run.seeds, mu2_bound, p.s, distinct[0], distinct[1],
                 distinct[2], growth, t);
  v.payload["sizes"] = rows;
  v.payload["mu2_bound"] = mu2_bound;
  return v;
}

json reff_workload(std::size_t small_seeds, std::size_t big_seeds, bool* all_ok,
                   std::string* summary) {
  struct Case {
    std::string name;
    RegularGraph g;
    double exact;
  };
  std::vector<Case> cases{{"K4", complete_graph(4), 0.5},
                          {"C4", cycle_graph(4), 0.75},
                          {"C3", cycle_graph(3), 2.0 / 3.0}};
  json out = json::array();
  bool ok = true;
  std::string text;
  for (const auto& c : cases) {
    const double mu2 = dense_mu2(c.g);
    std::size_t hits = 0;
    json vals = json::array();
    for (std::size_t seed = 0; seed < small_seeds; ++seed) {
      const auto r = effective_resistance(c.g, 0, 1, 0.05, mu2, seed);
      hits += std::abs(r.value - c.exact) <= 0.05 * c.exact;
      vals.push_back(r.value);
    }
    ok &= hits >= 0.9 * double(small_seeds);
    text += fmt("%s %zu/%zu, ", c.name.c_str(), hits, small_seeds);
    out.push_back({{"graph", c.name}, {"exact", c.exact}, {"within", hits}, {"values", vals}});
  }
  const auto g = random_expander(1024, 3, 7);
  const double mu2 = dense_mu2(g);
  const Vertex u = 3, w = 700;
  std::vector<double> bd(g.n(), 0.0);
  bd[u] = 1.0;
  bd[w] = -1.0;
  const auto x = pinv_solve(dense_laplacian(g), bd);
  const double exact = x[u] - x[w];
  std::size_t hits = 0;
  json vals = json::array();
  for (std::size_t seed = 0; seed < big_seeds; ++seed) {
    const auto r = effective_resistance(g, u, w, 0.1, mu2, seed);
    hits += std::abs(r.value - exact) <= 0.1 * exact;
    vals.push_back(r.value);
  }
  ok &= hits >= 0.9 * double(big_seeds);
  text += fmt("n=1024 expander %zu/%zu within (1+-0.1) of %.4f", hits, big_seeds, exact);
  out.push_back({{"graph", "expander1024"}, {"exact", exact}, {"within", hits}, {"values", vals}});
  *all_ok = ok;
  *summary = text;
  return out;
}

Verdict c05() {
  Stopwatch sw;
  Verdict v;
  bool ok = false;
  std::string text;
  v.payload["cases"] = reff_workload(100, 20, &ok, &text);
  const double t = sw.seconds();
  v.pass = ok && t < 300.0;
  v.detail = text + fmt(" (need >= 90%% each), %.1fs (< 300s)", t);
  return v;
}

Verdict c06() {
  Stopwatch sw;
  Verdict v;
  const double alpha = 0.5, eps = 0.1;
  const std::size_t seeds = 100;
  bool ok = true;
  std::string text;
  json rows = json::array();
  for (auto& [name, g] : std::vector<std::pair<std::string, RegularGraph>>{
           {"K4", complete_graph(4)}, {"rr256_4", connected_regular(256, 4, 12)}}) {
    const auto n = static_cast<Eigen::Index>(g.n());
    const Eigen::MatrixXd m =
        Eigen::MatrixXd::Identity(n, n) - alpha / double(g.degree()) * dense_adjacency(g);
    const auto lu = m.partialPivLu();
    const Eigen::VectorXd xu = lu.solve(Eigen::VectorXd::Constant(n, (1.0 - alpha) / double(n)));
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(n);
    e0(0) = 1.0 - alpha;
    const Eigen::VectorXd xp = lu.solve(e0);
    const VectorOracle bp(g.n(), {{0, 1.0 - alpha}});
    std::size_t uniform_hits = 0, personal_hits = 0;
    double worst_uniform = 0.0;
    for (std::size_t seed = 0; seed < seeds; ++seed) {
      const auto u = static_cast<Vertex>(seed % g.n());
      const auto ru = personalized_pagerank(g, alpha, nullptr, u, eps, seed);
      const double err_u = std::abs(ru.estimate.value - xu(u));
      worst_uniform = std::max(worst_uniform, std::abs(ru.estimate.value - 1.0 / double(n)));
      uniform_hits += err_u <= eps * xu.cwiseAbs().maxCoeff();
      const auto rp = personalized_pagerank(g, alpha, &bp, u, eps, seed);
      personal_hits += std::abs(rp.estimate.value - xp(u)) <= eps * xp.cwiseAbs().maxCoeff();
    }
    ok &= uniform_hits == seeds && personal_hits >= 0.9 * double(seeds);
    text += fmt("%s: uniform %zu/%zu, personalized %zu/%zu; ", name.c_str(), uniform_hits, seeds,
                personal_hits, seeds);
    rows.push_back({{"graph", name},
                    {"uniform_within", uniform_hits},
                    {"personalized_within", personal_hits},
                    {"worst_uniform_error", worst_uniform}});
  }
  const double t = sw.seconds();
  v.pass = ok && t < 120.0;
  v.detail = text + fmt("alpha=0.5 eps=0.1, %.1fs (< 120s)", t);
  v.payload["cases"] = rows;
  return v;
}

json psd_workload(const PsdInstance& inst, std::size_t trials, SignRecoveryReport* out) {
  const std::size_t r = inst.r_tree > 1 ? inst.r_tree - 1 : 1;
  *out = run_sign_recovery_experiment(inst, r, 1.0, trials, 21);
  json j;
  j["mu"] = inst.mu;
  j["r_tree"] = inst.r_tree;
  j["w_hat"] = inst.w_hat;
  j["r"] = r;
  j["delta"] = out->delta;
  j["q"] = out->q;
  j["recovery_rate"] = out->recovery_rate;
  j["norm_bound_rate"] = out->norm_bound_rate;
  json ratios = json::array();
  for (const auto& t : out->trials) ratios.push_back({t.x_w_ratio, t.x_inf_ratio});
  j["ratios"] = ratios;
  return j;
}

PsdInstance psd_instance() {
  PsdBuildOptions o;
  o.filter = SpectralFilter::Ramanujan;
  return build_psd_hard_instance(2000, 3, 2024, o);
}

Verdict c07() {
  Stopwatch sw;
  Verdict v;
  std::string strict_outcome = "built";
  try {
    PsdBuildOptions strict;
    strict.max_retries = 3;
    build_psd_hard_instance(2000, 3, 2024, strict);
  } catch (const Error& e) {
    strict_outcome = e.what();
  }
  const auto inst = psd_instance();
  const double mu_limit = 0.5 * std::pow(3.0, 2.0 / 3.0) * (1.0 + 1e-6);
  const double kappa_lib = condition_number(inst.m_matrix);
  const auto ev = eigenvalues(dense_of(inst.m_matrix));
  const double kappa_ref = ev(ev.size() - 1) / ev(0);
  SignRecoveryReport rep;
  v.payload["experiment"] = psd_workload(inst, 200, &rep);
  v.payload["strict_filter"] = strict_outcome;
  v.payload["kappa"] = kappa_ref;

  const bool radius_ok = inst.r_tree >= 3;
  const bool mu_ok = inst.mu <= mu_limit;
  const bool kappa_ok = kappa_ref <= 3.0 + 1e-6 && std::abs(kappa_lib - kappa_ref) < 1e-6;
  const bool rec_ok = rep.recovery_rate >= 0.8;
  const bool norm_ok = rep.norm_bound_rate >= 0.8;
  const double t = sw.seconds();
  v.pass = radius_ok && mu_ok && kappa_ok && rec_ok && norm_ok && t < 600.0;
  v.detail = fmt("r_tree %zu (>= 3: %s); mu %.4f vs 0.5 d^(2/3) = %.4f (%s); kappa(M) %.6f (<= 3: "
                 "%s); at r=%zu: recovery %.3f (>= 0.8: %s), norm bound %.3f (>= 0.8: %s); "
                 "strict spectral filter: %s; %.1fs (< 600s)",
                 inst.r_tree, radius_ok ? "ok" : "no", inst.mu, mu_limit, mu_ok ? "ok" : "no",
                 kappa_ref, kappa_ok ? "ok" : "no", rep.r, rep.recovery_rate,
                 rec_ok ? "ok" : "no", rep.norm_bound_rate, norm_ok ? "ok" : "no",
                 strict_outcome == "built" ? "passed" : "no graph passed", t);
  return v;
}

Verdict c08() {
  Stopwatch sw;
  Verdict v;
  const double delta = 0.03;
  const auto hi = static_cast<std::size_t>(std::ceil(100.0 / (delta * delta)));
  const auto lo = static_cast<std::size_t>(std::floor(1.0 / (delta * delta) / 100.0));
  const std::vector<std::size_t> counts{hi, lo};
  const auto rates = probe_complexity_curve(delta, counts, 2000, 8);
  const double t = sw.seconds();
  v.pass = rates[0] >= 0.99 && rates[1] <= 0.60 && t < 60.0;
  v.detail = fmt("delta=0.03: m=%zu success %.4f (>= 0.99), m=%zu success %.4f (<= 0.60), 2000 "
                 "trials each, %.1fs (< 60s)",
                 hi, rates[0], lo, rates[1], t);
  v.payload["rates"] = rates;
  return v;
}

constexpr double kBridgeConstant = 0.25;

json kappa_workload(std::size_t trials, BridgeGapReport* out, double* p_used) {
  const auto inst = build_kappa_instance(2000, 10, 0);
  const double p = default_bias(2000, 10);
  *out = run_bridge_gap_experiment(inst, p, trials, 31);
  *p_used = p;
  json j;
  j["kappa"] = inst.kappa_measured;
  j["p"] = p;
  j["balanced_max"] = out->balanced_max;
  j["unbalanced_max"] = out->unbalanced_max;
  j["unbalanced_mean_min"] = out->unbalanced_mean_min;
  j["series_relative_error"] = out->series_relative_error;
  json rows = json::array();
  for (const auto& t : out->trials)
    rows.push_back({t.balanced.max_gap, t.unbalanced.max_gap, t.unbalanced.mean_gap});
  j["trials"] = rows;
  return j;
}

Verdict c09() {
  Stopwatch sw;
  Verdict v;
  std::vector<double> kappas;
  for (std::uint64_t seed = 0; seed < 5; ++seed)
    kappas.push_back(build_kappa_instance(2000, 10, seed).kappa_measured);
  const double kmax = *std::max_element(kappas.begin(), kappas.end());
  const double kmin = *std::min_element(kappas.begin(), kappas.end());
  BridgeGapReport rep;
  double p = 0.0;
  v.payload["experiment"] = kappa_workload(50, &rep, &p);
  v.payload["kappas"] = kappas;
  const double ratio = rep.unbalanced_max / rep.balanced_max;
  const double floor_gap = kBridgeConstant * 10.0 * p;
  const bool kappa_ok = kmax <= 300.0 && kmax / kmin <= 2.0;
  const bool ratio_ok = ratio >= 3.0;
  const bool mean_ok = rep.unbalanced_mean_min >= floor_gap;
  const double t = sw.seconds();
  v.pass = kappa_ok && ratio_ok && mean_ok && t < 900.0;
  v.detail = fmt("kappa(L) over 5 seeds in [%.2f, %.2f] (<= 300, spread %.2fx <= 2x: %s); 50 "
                 "trials p=%.4f: max gap unbalanced %.3f / balanced %.3f = %.2fx (>= 3x: %s), "
                 "medians %.3f / %.3f; min unbalanced mean gap %.3f vs c'kp = %.2f*%.3f = %.3f "
                 "(%s); %.1fs (< 900s)",
                 kmin, kmax, kmax / kmin, kappa_ok ? "ok" : "no", p, rep.unbalanced_max,
                 rep.balanced_max, ratio, ratio_ok ? "ok" : "no", rep.unbalanced_max_median,
                 rep.balanced_max_median, rep.unbalanced_mean_min, kBridgeConstant, 10.0 * p,
                 floor_gap, mean_ok ? "ok" : "no", t);
  return v;
}

Verdict c10() {
  Stopwatch sw;
  Verdict v;
  const auto twice = [](const std::function<json(int)>& f) {
    return std::make_pair(dump_json(f(0)), dump_json(f(1)));
  };
  std::vector<std::pair<std::string, bool>> parts;
  parts.emplace_back("c03", [&] {
    const auto [a, b] = twice([](int pass) {
      return statistical_contract(20, pass == 0 ? 1u : 3u).payload;
    });
    return a == b;
  }());
  parts.emplace_back("c05", [&] {
    const auto [a, b] = twice([](int) {
      bool ok;
      std::string s;
      return reff_workload(20, 3, &ok, &s);
    });
    return a == b;
  }());
  parts.emplace_back("c07", [&] {
    const auto [a, b] = twice([](int) {
      SignRecoveryReport rep;
      return psd_workload(psd_instance(), 200, &rep);
    });
    return a == b;
  }());
  parts.emplace_back("c09", [&] {
    const auto [a, b] = twice([](int) {
      BridgeGapReport rep;
      double p;
      return kappa_workload(10, &rep, &p);
    });
    return a == b;
  }());
  bool ok = true;
  std::string text;
  for (const auto& [name, same] : parts) {
    ok &= same;
    text += name + (same ? " identical, " : " DIFFERENT, ");
    v.payload[name] = same;
  }
  v.pass = ok;
  v.detail = text + fmt("%.1fs", sw.seconds());
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> all{
      {"c01", c01}, {"c02", c02}, {"c03", c03}, {"c04", c04}, {"c05", c05},
      {"c06", c06}, {"c07", c07}, {"c08", c08}, {"c09", c09}, {"c10", c10}};
  std::vector<std::string> selected;
  bool expect_pass = true;
  std::string report_dir;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--expect" && i + 1 < argc) {
      expect_pass = std::string(argv[++i]) != "FAIL";
    } else if (a == "--report-dir" && i + 1 < argc) {
      report_dir = argv[++i];
    } else {
      selected.push_back(a);
    }
  }
  if (selected.empty())
    for (const auto& [id, fn] : all) selected.push_back(id);

  int status = 0;
  for (const auto& id : selected) {
    const auto it = std::find_if(all.begin(), all.end(), [&](const auto& c) { return c.first == id; });
    if (it == all.end()) {
      std::fprintf(stderr, "unknown criterion %s\n", id.c_str());
      return 2;
    }
    Verdict v;
    try {
      v = it->second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("error: ") + e.what();
    }
    std::printf("%s %s  %s\n", id.c_str(), v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
    if (v.pass != expect_pass) status = 1;
    if (!report_dir.empty()) {
      std::filesystem::create_directories(report_dir);
      json j;
      j["criterion"] = id;
      j["pass"] = v.pass;
      j["detail"] = v.detail;
      j["payload"] = v.payload;
      std::ofstream(std::filesystem::path(report_dir) / (id + ".json")) << dump_json(j) << "\n";
    }
  }
  return status;
}
