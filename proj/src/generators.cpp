#include "localsolve/generators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "localsolve/error.hpp"
#include "localsolve/exact_oracle.hpp"
#include "localsolve/rng.hpp"

namespace localsolve {

RegularGraph cycle_graph(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::PreconditionViolated, "a cycle needs at least 3 vertices");
  std::vector<std::pair<Vertex, Vertex>> e;
  for (std::size_t i = 0; i < n; ++i)
    e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
  return RegularGraph::from_edges(n, e);
}

RegularGraph complete_graph(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::PreconditionViolated, "K_n needs n >= 2");
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return RegularGraph::from_edges(n, e);
}

namespace {

bool adjacent(const std::vector<std::vector<Vertex>>& adj, Vertex a, Vertex b) {
  return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end();
}

bool any_suitable_pair(const std::vector<std::size_t>& points, std::size_t d,
                       const std::vector<std::vector<Vertex>>& adj) {
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const auto a = static_cast<Vertex>(points[i] / d), b = static_cast<Vertex>(points[j] / d);
      if (a != b && !adjacent(adj, a, b)) return true;
    }
  return false;
}

}  // namespace

RegularGraph random_regular_graph(std::size_t n, std::size_t d, std::uint64_t seed,
                                  std::size_t max_attempts) {
  if (d >= n || (n * d) % 2 != 0)
    throw Error(ErrorCode::PreconditionViolated,
                "no simple " + std::to_string(d) + "-regular graph on " + std::to_string(n) +
                    " vertices");
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    CounterRng rng(seed, StreamRole::Construction, attempt);
    std::vector<std::size_t> points(n * d);
    for (std::size_t k = 0; k < points.size(); ++k) points[k] = k;
    std::vector<std::vector<Vertex>> adj(n);
    for (auto& a : adj) a.reserve(d);
    bool stuck = false;
    while (!points.empty() && !stuck) {
      bool paired = false;
      for (int tries = 0; tries < 100 && !paired; ++tries) {
        const auto i = static_cast<std::size_t>(rng.below(points.size()));
        const auto j = static_cast<std::size_t>(rng.below(points.size()));
        if (i == j) continue;
        const auto a = static_cast<Vertex>(points[i] / d), b = static_cast<Vertex>(points[j] / d);
        if (a == b || adjacent(adj, a, b)) continue;
        adj[a].push_back(b);
        adj[b].push_back(a);
        const std::size_t hi = std::max(i, j), lo = std::min(i, j);
        points[hi] = points.back();
        points.pop_back();
        points[lo] = points.back();
        points.pop_back();
        paired = true;
      }
      if (!paired && !any_suitable_pair(points, d, adj)) stuck = true;
    }
    if (stuck) continue;
    std::vector<Vertex> slots;
    slots.reserve(n * d);
    for (const auto& a : adj) slots.insert(slots.end(), a.begin(), a.end());
    return RegularGraph(n, d, std::move(slots));
  }
  throw Error(ErrorCode::ConstructionFailed,
              "pairing process failed " + std::to_string(max_attempts) + " times");
}

double second_adjacency_eigenvalue(const RegularGraph& g) {
  const std::size_t n = g.n();
  if (n < 2) return 0.0;
  if (n <= 2000) {
    const auto dim = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    for (Vertex v = 0; v < n; ++v)
      for (Vertex w : g.neighbors(v)) a(v, w) += 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(dim - 2)));
  }
  std::vector<std::vector<double>> ones{std::vector<double>(n, 1.0 / std::sqrt(double(n)))};
  const auto ext = extreme_eigenvalues(
      n, [&g](std::span<const double> x, std::span<double> y) { g.multiply_adjacency(x, y); },
      ones, 1e-8);
  return std::max(std::abs(ext.min), std::abs(ext.max));
}

RegularGraph random_expander(std::size_t n, std::size_t d, std::uint64_t seed,
                             const ExpanderOptions& options) {
  const double bound = 2.0 * std::sqrt(static_cast<double>(d) - 1.0) + options.slack;
  double last = 0.0;
  for (std::size_t r = 0; r < options.max_retries; ++r) {
    auto g = random_regular_graph(n, d, derive_seed(seed, StreamRole::Construction, r));
    if (g.component_count() != 1) continue;
    last = second_adjacency_eigenvalue(g);
    if (last <= bound) return g;
  }
  throw Error(ErrorCode::ConstructionFailed,
              "no expander within " + std::to_string(options.max_retries) +
                  " tries; last second eigenvalue " + std::to_string(last) + " vs bound " +
                  std::to_string(bound));
}

RegularGraph relabel(const RegularGraph& g, std::span<const Vertex> perm) {
  if (perm.size() != g.n()) throw Error(ErrorCode::PreconditionViolated, "permutation size");
  const std::size_t d = g.degree();
  std::vector<Vertex> slots(g.n() * d);
  for (Vertex v = 0; v < g.n(); ++v) {
    const auto nb = g.neighbors(v);
    for (std::size_t k = 0; k < d; ++k) slots[perm[v] * d + k] = perm[nb[k]];
  }
  return RegularGraph(g.n(), d, std::move(slots));
}

}  // namespace localsolve
