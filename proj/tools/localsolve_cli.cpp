#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "localsolve/applications.hpp"
#include "localsolve/error.hpp"
#include "localsolve/exact_oracle.hpp"
#include "localsolve/hard_instances.hpp"
#include "localsolve/io.hpp"
#include "localsolve/json_output.hpp"
#include "localsolve/local_solver.hpp"

using namespace localsolve;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitOracle = 4;

/// Raised while reading input files; always maps to the parse exit code.
struct InputError {
  std::string message;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotInRange:
    case ErrorCode::SingularBeyondKernel:
    case ErrorCode::ConvergenceFailure:
      return kExitOracle;
    case ErrorCode::ParseError:
    case ErrorCode::NonRegular:
    case ErrorCode::NotSymmetric:
    case ErrorCode::NotDiagonallyDominant:
    case ErrorCode::NonpositiveDiagonal:
    case ErrorCode::IndexOutOfRange:
      return kExitParse;
    default:
      return kExitPrecondition;
  }
}

class Digest {
 public:
  void add(std::string_view bytes) {
    for (unsigned char c : bytes) {
      h_ ^= c;
      h_ *= 0x100000001b3ULL;
    }
    h_ ^= 0xff;
    h_ *= 0x100000001b3ULL;
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{"cannot open " + path};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

template <class Fn>
auto load(const std::string& what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    std::string msg = what + ": " + e.what();
    if (e.row()) msg += " (row " + std::to_string(*e.row()) + ")";
    throw InputError{msg};
  }
}

struct Common {
  std::uint64_t seed = 0;
  double epsilon = 0.1;
  bool verify = false;
  std::size_t amplify = 1;
  std::string json_out;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string rule = "eb";
  bool no_timing = false;
};

void add_common(CLI::App* cmd, Common& c, bool walks) {
  cmd->add_option("--seed", c.seed, "random seed");
  cmd->add_option("--json-out", c.json_out, "also write the report to this path");
  cmd->add_flag("--no-timing", c.no_timing, "omit wall_time_s");
  if (!walks) return;
  cmd->add_option("--epsilon", c.epsilon, "accuracy parameter");
  cmd->add_flag("--verify", c.verify, "compare against the exact oracle");
  cmd->add_option("--amplify", c.amplify, "median of this many independent runs")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--rule", c.rule, "walk count rule")
      ->check(CLI::IsMember({"eb", "hoeffding"}));
}

SampleRule rule_of(const Common& c) {
  return c.rule == "hoeffding" ? SampleRule::Hoeffding : SampleRule::EmpiricalBernstein;
}

json estimate_json(const Estimate& e) {
  json j;
  j["value"] = e.value;
  j["s"] = e.s;
  j["ell"] = e.ell;
  j["rounds"] = e.rounds;
  j["total_steps"] = e.total_steps;
  j["probe_count"] = e.probe_count;
  j["distinct_probes"] = e.distinct_probes;
  return j;
}

json params_json(const SolveParams& p) {
  json j;
  j["epsilon"] = p.epsilon;
  j["internal_epsilon"] = p.internal_epsilon;
  j["s"] = p.s;
  j["ell_cap"] = p.ell;
  if (p.mu2_lower > 0.0) j["mu2_lower"] = p.mu2_lower;
  if (p.lambda_tilde_upper > 0.0) j["lambda_tilde_upper"] = p.lambda_tilde_upper;
  j["b0_upper"] = p.b0_upper;
  j["lazy"] = p.lazy;
  j["rule"] = p.rule == SampleRule::Hoeffding ? "hoeffding" : "empirical-bernstein";
  j["failure_budget"] = p.failure_budget;
  return j;
}

Estimate run_amplified(const Common& c, const std::function<Estimate(std::uint64_t)>& run) {
  if (c.amplify <= 1) return run(c.seed);
  return amplify_median(c.amplify, c.seed, run);
}

double inf_norm(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double max_edge_difference(const RegularGraph& g, const std::vector<double>& x) {
  double m = 0.0;
  for (Vertex v = 0; v < g.n(); ++v)
    for (Vertex w : g.neighbors(v)) m = std::max(m, std::abs(x[v] - x[w]));
  return m;
}

struct Report {
  std::string command;
  Digest digest;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t distinct_probes = 0;
  json payload = json::object();
};

int emit(const Report& r, const Common& c, double seconds) {
  json j;
  j["schema"] = 1;
  j["command"] = r.command;
  j["inputs_digest"] = r.digest.hex();
  j["seed"] = r.seed;
  j["n"] = r.n;
  j["distinct_probes"] = r.distinct_probes;
  j["payload"] = r.payload;
  if (!c.no_timing) j["wall_time_s"] = seconds;
  const std::string text = dump_json(j) + "\n";
  std::cout << text;
  if (!c.json_out.empty()) {
    std::ofstream out(c.json_out, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << c.json_out << "\n";
      return kExitPrecondition;
    }
    out << text;
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct LapArgs {
  std::string graph, b;
  Vertex u = 0;
  std::optional<Vertex> v;
  std::optional<double> mu2, kappa_bar;
  std::optional<std::size_t> b0_upper;
  bool no_lazy = false;
};

Report cmd_solve_lap(const LapArgs& a, const Common& c) {
  Report r;
  r.command = "solve-lap";
  const std::string gtext = read_file(a.graph), btext = read_file(a.b);
  r.digest.add(gtext);
  r.digest.add(btext);
  std::istringstream gs(gtext);
  const RegularGraph g = load("graph", [&] { return load_edge_list(gs); });
  std::istringstream bs(btext);
  const VectorOracle b = load("b", [&] { return load_vector(bs, g.n()); });
  if (!a.mu2 && !a.kappa_bar)
    throw Error(ErrorCode::PreconditionViolated, "one of --mu2 or --kappa-bar is required");
  const double mu2 = a.mu2 ? *a.mu2 : mu2_from_kappa(g.degree(), *a.kappa_bar);

  LaplacianPlanOptions plan;
  plan.lazy = !a.no_lazy;
  plan.target = a.v ? Target::Pair : Target::Coordinate;
  plan.rule = rule_of(c);
  plan.threads = c.threads;
  const SolveParams p =
      plan_params_laplacian(g.degree(), mu2, c.epsilon, a.b0_upper.value_or(g.n()), plan);
  const Estimate e = run_amplified(c, [&](std::uint64_t seed) {
    return a.v ? estimate_pair_difference(g, b, a.u, *a.v, p, seed)
               : estimate_coordinate_laplacian(g, b, a.u, p, seed);
  });

  r.seed = c.seed;
  r.n = g.n();
  r.distinct_probes = e.distinct_probes;
  r.payload["query"] = a.v ? json{{"u", a.u}, {"v", *a.v}} : json{{"u", a.u}};
  r.payload["params"] = params_json(p);
  r.payload["amplify"] = c.amplify;
  r.payload["estimate"] = estimate_json(e);
  if (c.verify) {
    const auto x = exact_solve_laplacian(g, b.dense());
    const double exact = a.v ? x[a.u] - x[*a.v] : x[a.u];
    const double err = std::abs(e.value - exact);
    const double inf_bound = c.epsilon * inf_norm(x);
    const double edge_bound = c.epsilon * max_edge_difference(g, x);
    r.payload["verify"] = {{"exact", exact},
                           {"error", err},
                           {"bound_inf", inf_bound},
                           {"within_inf", err <= inf_bound},
                           {"bound_edge", edge_bound},
                           {"within_edge", err <= edge_bound}};
  }
  return r;
}

struct SddArgs {
  std::string matrix, b;
  Vertex u = 0;
  std::optional<double> lambda_tilde, kappa_bar;
  std::optional<std::size_t> b0_upper;
};

Report cmd_solve_sdd(const SddArgs& a, const Common& c) {
  Report r;
  r.command = "solve-sdd";
  const std::string mtext = read_file(a.matrix), btext = read_file(a.b);
  r.digest.add(mtext);
  r.digest.add(btext);
  std::istringstream ms(mtext);
  const SddMatrix s = load("matrix", [&] { return load_sdd_matrix(ms); });
  std::istringstream bs(btext);
  const VectorOracle b = load("b", [&] { return load_vector(bs, s.n()); });
  if (!a.lambda_tilde && !a.kappa_bar)
    throw Error(ErrorCode::PreconditionViolated,
                "one of --lambda-tilde or --kappa-bar is required");
  const double lt = a.lambda_tilde ? *a.lambda_tilde : lambda_tilde_from_kappa(*a.kappa_bar);

  SddPlanOptions plan;
  plan.rule = rule_of(c);
  plan.threads = c.threads;
  const SolveParams p =
      plan_params_sdd(lt, c.epsilon, a.b0_upper.value_or(s.n()), s.d_max(), s.d_min(), plan);
  const Estimate e = run_amplified(
      c, [&](std::uint64_t seed) { return estimate_coordinate_sdd(s, b, a.u, p, seed); });

  r.seed = c.seed;
  r.n = s.n();
  r.distinct_probes = e.distinct_probes;
  r.payload["query"] = {{"u", a.u}};
  r.payload["params"] = params_json(p);
  r.payload["amplify"] = c.amplify;
  r.payload["estimate"] = estimate_json(e);
  if (c.verify) {
    const auto x = exact_solve(s, b.dense());
    const double err = std::abs(e.value - x[a.u]);
    const double bound = c.epsilon * inf_norm(x);
    r.payload["verify"] = {
        {"exact", x[a.u]}, {"error", err}, {"bound_inf", bound}, {"within_inf", err <= bound}};
  }
  return r;
}

struct ReffArgs {
  std::string graph;
  Vertex u = 0, v = 1;
  std::optional<double> mu2, kappa_bar;
  bool no_lazy = false;
};

Report cmd_reff(const ReffArgs& a, const Common& c) {
  Report r;
  r.command = "reff";
  const std::string gtext = read_file(a.graph);
  r.digest.add(gtext);
  std::istringstream gs(gtext);
  const RegularGraph g = load("graph", [&] { return load_edge_list(gs); });
  if (!a.mu2 && !a.kappa_bar)
    throw Error(ErrorCode::PreconditionViolated, "one of --mu2 or --kappa-bar is required");
  const double mu2 = a.mu2 ? *a.mu2 : mu2_from_kappa(g.degree(), *a.kappa_bar);

  ReffOptions opts;
  opts.lazy = !a.no_lazy;
  opts.rule = rule_of(c);
  opts.threads = c.threads;
  SolveParams params;
  const Estimate e = run_amplified(c, [&](std::uint64_t seed) {
    auto res = effective_resistance(g, a.u, a.v, c.epsilon, mu2, seed, opts);
    params = res.params;
    return res.estimate;
  });

  r.seed = c.seed;
  r.n = g.n();
  r.distinct_probes = e.distinct_probes;
  r.payload["query"] = {{"u", a.u}, {"v", a.v}};
  r.payload["params"] = params_json(params);
  r.payload["amplify"] = c.amplify;
  r.payload["estimate"] = estimate_json(e);
  if (c.verify) {
    std::vector<double> bd(g.n(), 0.0);
    bd[a.u] = 1.0;
    bd[a.v] = -1.0;
    const auto x = exact_solve_laplacian(g, bd);
    const double exact = x[a.u] - x[a.v];
    const double rel = std::abs(e.value - exact) / exact;
    r.payload["verify"] = {{"exact", exact},
                           {"relative_error", rel},
                           {"within", rel <= c.epsilon}};
  }
  return r;
}

struct PageRankArgs {
  std::string graph, b;
  Vertex u = 0;
  double alpha = 0.5;
};

Report cmd_pagerank(const PageRankArgs& a, const Common& c) {
  Report r;
  r.command = "pagerank";
  const std::string gtext = read_file(a.graph);
  r.digest.add(gtext);
  std::istringstream gs(gtext);
  const RegularGraph g = load("graph", [&] { return load_edge_list(gs); });
  std::optional<VectorOracle> b;
  if (!a.b.empty()) {
    const std::string btext = read_file(a.b);
    r.digest.add(btext);
    std::istringstream bs(btext);
    b = load("b", [&] { return load_vector(bs, g.n()); });
  }
  PageRankOptions opts;
  opts.rule = rule_of(c);
  opts.threads = c.threads;
  SolveParams params;
  const Estimate e = run_amplified(c, [&](std::uint64_t seed) {
    auto res = personalized_pagerank(g, a.alpha, b ? &*b : nullptr, a.u, c.epsilon, seed, opts);
    params = res.params;
    return res.estimate;
  });

  r.seed = c.seed;
  r.n = g.n();
  r.distinct_probes = e.distinct_probes;
  r.payload["query"] = {{"u", a.u}, {"alpha", a.alpha}, {"uniform_b", !b}};
  r.payload["params"] = params_json(params);
  r.payload["amplify"] = c.amplify;
  r.payload["estimate"] = estimate_json(e);
  if (c.verify) {
    std::vector<double> bd =
        b ? b->dense() : std::vector<double>(g.n(), (1.0 - a.alpha) / static_cast<double>(g.n()));
    const auto x = exact_solve(pagerank_matrix(g, a.alpha), bd);
    const double err = std::abs(e.value - x[a.u]);
    const double bound = c.epsilon * inf_norm(x);
    r.payload["verify"] = {
        {"exact", x[a.u]}, {"error", err}, {"bound_inf", bound}, {"within_inf", err <= bound}};
  }
  return r;
}

struct SystemArgs {
  std::string graph, matrix, b;
};

Report cmd_exact(const SystemArgs& a) {
  Report r;
  r.command = "exact";
  if (a.graph.empty() == a.matrix.empty())
    throw Error(ErrorCode::PreconditionViolated, "give exactly one of --graph or --matrix");
  const std::string atext = read_file(a.graph.empty() ? a.matrix : a.graph);
  const std::string btext = read_file(a.b);
  r.digest.add(atext);
  r.digest.add(btext);
  std::istringstream as(atext), bs(btext);
  std::vector<double> x;
  if (!a.graph.empty()) {
    const RegularGraph g = load("graph", [&] { return load_edge_list(as); });
    const VectorOracle b = load("b", [&] { return load_vector(bs, g.n()); });
    x = exact_solve_laplacian(g, b.dense());
    r.n = g.n();
    r.payload["system"] = "laplacian";
  } else {
    const SddMatrix s = load("matrix", [&] { return load_sdd_matrix(as); });
    const VectorOracle b = load("b", [&] { return load_vector(bs, s.n()); });
    x = exact_solve(s, b.dense());
    r.n = s.n();
    r.payload["system"] = "sdd";
  }
  r.payload["x"] = x;
  r.payload["x_inf"] = inf_norm(x);
  return r;
}

Report cmd_spectral(const SystemArgs& a) {
  Report r;
  r.command = "spectral";
  if (a.graph.empty() == a.matrix.empty())
    throw Error(ErrorCode::PreconditionViolated, "give exactly one of --graph or --matrix");
  const std::string atext = read_file(a.graph.empty() ? a.matrix : a.graph);
  r.digest.add(atext);
  std::istringstream as(atext);
  Spectrum sp;
  double kappa = 0.0;
  if (!a.graph.empty()) {
    const RegularGraph g = load("graph", [&] { return load_edge_list(as); });
    sp = spectrum(g);
    kappa = condition_number(SddMatrix::laplacian(g));
    r.n = g.n();
    r.payload["system"] = "laplacian";
    r.payload["d"] = g.degree();
    r.payload["components"] = g.component_count();
  } else {
    const SddMatrix s = load("matrix", [&] { return load_sdd_matrix(as); });
    sp = spectrum(s);
    kappa = condition_number(s);
    r.n = s.n();
    r.payload["system"] = "sdd";
  }
  r.payload["mu2"] = sp.mu2;
  r.payload["lambda_max"] = sp.lambda_max;
  r.payload["lambda_tilde"] = sp.lambda_tilde;
  r.payload["kernel_dim"] = sp.kernel_dim;
  r.payload["kappa"] = kappa;
  r.payload["dense"] = sp.dense;
  return r;
}

struct PsdArgs {
  std::size_t n = 2000, d = 3, trials = 200, r_target = 3;
  std::optional<std::size_t> r;
  double c_const = 1.0;
  std::string filter = "ramanujan";
  std::string out;
};

const char* filter_name(SpectralFilter f) {
  switch (f) {
    case SpectralFilter::Strict: return "strict";
    case SpectralFilter::Ramanujan: return "ramanujan";
    case SpectralFilter::Off: return "off";
  }
  return "?";
}

Report cmd_lb_psd(const PsdArgs& a, const Common& c) {
  Report r;
  r.command = "lb-psd";
  PsdBuildOptions opts;
  opts.filter = a.filter == "ramanujan" ? SpectralFilter::Ramanujan
                : a.filter == "off"     ? SpectralFilter::Off
                                        : SpectralFilter::Strict;
  opts.r_target = a.r_target;
  const PsdInstance inst = build_psd_hard_instance(a.n, a.d, c.seed, opts);
  const std::size_t radius = a.r.value_or(inst.r_tree > 1 ? inst.r_tree - 1 : 1);
  const auto rep = run_sign_recovery_experiment(inst, radius, a.c_const, a.trials, c.seed);
  const double kappa = condition_number(inst.m_matrix);

  r.seed = c.seed;
  r.n = inst.n;
  json ij;
  ij["d"] = inst.d;
  ij["mu"] = inst.mu;
  ij["mu_limit"] = 0.5 * std::pow(static_cast<double>(inst.d), 2.0 / 3.0);
  ij["union_norm"] = inst.union_norm;
  ij["kappa"] = kappa;
  ij["g1_second_eigenvalue"] = inst.g1_second_eigenvalue;
  ij["filter"] = filter_name(inst.filter);
  ij["w_hat"] = inst.w_hat;
  ij["r_tree"] = inst.r_tree;
  ij["induced_radius"] = inst.tree.induced_radius;
  ij["level_sizes"] = inst.tree.level_sizes;
  ij["attempts"] = inst.attempts;
  r.payload["instance"] = ij;

  json ej;
  ej["r"] = rep.r;
  ej["c"] = a.c_const;
  ej["delta"] = rep.delta;
  ej["delta_unclamped"] = rep.delta_unclamped;
  ej["clamped"] = rep.clamped;
  ej["q"] = rep.q;
  ej["q_upper"] = rep.q_upper;
  ej["trials"] = rep.trials.size();
  ej["recovery_rate"] = rep.recovery_rate;
  ej["band_rate"] = rep.band_rate;
  ej["norm_bound_rate"] = rep.norm_bound_rate;
  json rows = json::array();
  for (const auto& t : rep.trials)
    rows.push_back({{"sigma", t.sigma},
                    {"x_w_ratio", t.x_w_ratio},
                    {"x_inf_ratio", t.x_inf_ratio},
                    {"recovered", t.recovered},
                    {"norm_bound", t.norm_bound}});
  ej["table"] = rows;
  r.payload["experiment"] = ej;

  if (!a.out.empty()) {
    std::vector<BiasedB> samples;
    samples.push_back(sample_biased_b(inst, radius, 1, a.c_const, c.seed));
    write_psd_instance(a.out, inst, samples);
  }
  return r;
}

struct KappaArgs {
  std::size_t n = 2000, k = 10, trials = 50;
  std::optional<double> p;
  std::string out;
};

Report cmd_lb_kappa(const KappaArgs& a, const Common& c) {
  Report r;
  r.command = "lb-kappa";
  const KappaInstance inst = build_kappa_instance(a.n, a.k, c.seed);
  const double p = a.p.value_or(default_bias(a.n, a.k));
  const auto rep = run_bridge_gap_experiment(inst, p, a.trials, c.seed);

  r.seed = c.seed;
  r.n = inst.n;
  r.payload["instance"] = {{"k", inst.k},
                           {"bridges", inst.bridges.size()},
                           {"kappa", inst.kappa_measured},
                           {"kappa_limit", 30.0 * static_cast<double>(inst.k)}};
  json ej;
  ej["p"] = rep.p;
  ej["threshold"] = rep.threshold;
  ej["trials"] = rep.trials.size();
  ej["balanced_max"] = rep.balanced_max;
  ej["unbalanced_max"] = rep.unbalanced_max;
  ej["max_ratio"] = rep.balanced_max > 0.0 ? rep.unbalanced_max / rep.balanced_max : 0.0;
  ej["balanced_max_median"] = rep.balanced_max_median;
  ej["unbalanced_max_median"] = rep.unbalanced_max_median;
  ej["unbalanced_mean_min"] = rep.unbalanced_mean_min;
  ej["unbalanced_mean_min_over_kp"] = rep.unbalanced_mean_min / (static_cast<double>(a.k) * p);
  ej["series_terms"] = rep.series_terms;
  ej["series_relative_error"] = rep.series_relative_error;
  json rows = json::array();
  for (const auto& t : rep.trials)
    rows.push_back({{"balanced_max", t.balanced.max_gap},
                    {"balanced_mean", t.balanced.mean_gap},
                    {"unbalanced_max", t.unbalanced.max_gap},
                    {"unbalanced_mean", t.unbalanced.mean_gap},
                    {"unbalanced_fraction_above", t.unbalanced.fraction_above}});
  ej["table"] = rows;
  r.payload["experiment"] = ej;

  if (!a.out.empty()) {
    std::vector<std::pair<std::string, std::vector<double>>> vecs;
    vecs.emplace_back("balanced", sample_balanced_b(inst, c.seed));
    vecs.emplace_back("unbalanced", sample_unbalanced_b(inst, p, c.seed));
    write_kappa_instance(a.out, inst, vecs);
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local solvers for Laplacian and SDD systems"};
  app.require_subcommand(1);
  Common common;

  LapArgs lap;
  auto* c_lap = app.add_subcommand("solve-lap", "estimate one coordinate of L+ b");
  c_lap->add_option("--graph", lap.graph, "edge list")->required();
  c_lap->add_option("--b", lap.b, "right-hand side")->required();
  c_lap->add_option("--u", lap.u, "query vertex")->required();
  c_lap->add_option("--v", lap.v, "second vertex: estimate x_u - x_v");
  auto* lap_mu = c_lap->add_option("--mu2", lap.mu2, "lower bound on mu2(L)");
  c_lap->add_option("--kappa-bar", lap.kappa_bar, "upper bound on kappa(L)")->excludes(lap_mu);
  c_lap->add_option("--b0-upper", lap.b0_upper, "upper bound on nnz(b)");
  c_lap->add_flag("--no-lazy", lap.no_lazy, "simple walks (caller certifies A is PSD)");
  add_common(c_lap, common, true);

  SddArgs sdd;
  auto* c_sdd = app.add_subcommand("solve-sdd", "estimate one coordinate of S+ b");
  c_sdd->add_option("--matrix", sdd.matrix, "MatrixMarket file")->required();
  c_sdd->add_option("--b", sdd.b, "right-hand side")->required();
  c_sdd->add_option("--u", sdd.u, "query index")->required();
  auto* sdd_lt = c_sdd->add_option("--lambda-tilde", sdd.lambda_tilde, "upper bound on lambda~");
  c_sdd->add_option("--kappa-bar", sdd.kappa_bar, "upper bound on kappa")->excludes(sdd_lt);
  c_sdd->add_option("--b0-upper", sdd.b0_upper, "upper bound on nnz(b)");
  add_common(c_sdd, common, true);

  ReffArgs reff;
  auto* c_reff = app.add_subcommand("reff", "effective resistance between two vertices");
  c_reff->add_option("--graph", reff.graph, "edge list")->required();
  c_reff->add_option("--u", reff.u)->required();
  c_reff->add_option("--v", reff.v)->required();
  auto* reff_mu = c_reff->add_option("--mu2", reff.mu2, "lower bound on mu2(L)");
  c_reff->add_option("--kappa-bar", reff.kappa_bar, "upper bound on kappa(L)")->excludes(reff_mu);
  c_reff->add_flag("--no-lazy", reff.no_lazy, "simple walks (caller certifies A is PSD)");
  add_common(c_reff, common, true);

  PageRankArgs pr;
  auto* c_pr = app.add_subcommand("pagerank", "personalized PageRank coordinate");
  c_pr->add_option("--graph", pr.graph, "edge list")->required();
  c_pr->add_option("--u", pr.u)->required();
  c_pr->add_option("--alpha", pr.alpha, "damping")->check(CLI::Range(0.0, 1.0));
  c_pr->add_option("--b", pr.b, "right-hand side (default uniform (1-alpha)/n)");
  add_common(c_pr, common, true);

  SystemArgs ex;
  auto* c_ex = app.add_subcommand("exact", "exact solution of a Laplacian or SDD system");
  auto* ex_g = c_ex->add_option("--graph", ex.graph, "edge list");
  c_ex->add_option("--matrix", ex.matrix, "MatrixMarket file")->excludes(ex_g);
  c_ex->add_option("--b", ex.b, "right-hand side")->required();
  add_common(c_ex, common, false);

  SystemArgs sp;
  auto* c_sp = app.add_subcommand("spectral", "spectral quantities of a graph or matrix");
  auto* sp_g = c_sp->add_option("--graph", sp.graph, "edge list");
  c_sp->add_option("--matrix", sp.matrix, "MatrixMarket file")->excludes(sp_g);
  add_common(c_sp, common, false);

  PsdArgs psd;
  auto* c_psd = app.add_subcommand("lb-psd", "signed PSD instance and sign-recovery experiment");
  c_psd->add_option("--n", psd.n);
  c_psd->add_option("--d", psd.d);
  c_psd->add_option("--trials", psd.trials);
  c_psd->add_option("--r", psd.r, "support radius (default r_tree - 1)");
  c_psd->add_option("--r-target", psd.r_target, "smallest acceptable tree radius");
  c_psd->add_option("--c", psd.c_const, "bias constant");
  c_psd->add_option("--filter", psd.filter, "spectral filter for G1")
      ->check(CLI::IsMember({"strict", "ramanujan", "off"}));
  c_psd->add_option("--out", psd.out, "write the instance to this directory");
  add_common(c_psd, common, false);

  KappaArgs kap;
  auto* c_kap = app.add_subcommand("lb-kappa", "bridged expanders and bridge-gap experiment");
  c_kap->add_option("--n", kap.n);
  c_kap->add_option("--k", kap.k);
  c_kap->add_option("--trials", kap.trials);
  c_kap->add_option("--p", kap.p, "bias (default min(1/2, sqrt(ln n)/k))");
  c_kap->add_option("--out", kap.out, "write the instance to this directory");
  add_common(c_kap, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitPrecondition;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    Report r;
    if (c_lap->parsed()) r = cmd_solve_lap(lap, common);
    else if (c_sdd->parsed()) r = cmd_solve_sdd(sdd, common);
    else if (c_reff->parsed()) r = cmd_reff(reff, common);
    else if (c_pr->parsed()) r = cmd_pagerank(pr, common);
    else if (c_ex->parsed()) r = cmd_exact(ex);
    else if (c_sp->parsed()) r = cmd_spectral(sp);
    else if (c_psd->parsed()) r = cmd_lb_psd(psd, common);
    else r = cmd_lb_kappa(kap, common);
    r.seed = common.seed;
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return emit(r, common, dt);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
}
