#include "localsolve/applications.hpp"

#include <algorithm>
#include <string>

#include "localsolve/error.hpp"

namespace localsolve {

ReffResult effective_resistance(const RegularGraph& g, Vertex u, Vertex v, double epsilon,
                                double mu2_lower, std::uint64_t seed, const ReffOptions& options) {
  if (u >= g.n() || v >= g.n())
    throw Error(ErrorCode::BadVertexId, "vertex outside the graph", std::max(u, v));
  if (u == v) throw Error(ErrorCode::SameVertex, "effective resistance needs two vertices", u);

  LaplacianPlanOptions plan;
  plan.lazy = options.lazy;
  plan.target = Target::Pair;
  plan.rule = options.rule;
  plan.threads = options.threads;
  ReffResult out;
  out.params = plan_params_laplacian(g.degree(), mu2_lower, epsilon, 2, plan);
  out.relative_epsilon = epsilon;
  const VectorOracle b(g.n(), {{u, 1.0}, {v, -1.0}});
  out.estimate = estimate_pair_difference(g, b, u, v, out.params, seed);
  out.value = out.estimate.value;
  return out;
}

SddMatrix pagerank_matrix(const RegularGraph& g, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(ErrorCode::BadBounds, "damping must lie in (0, 1)");
  std::vector<Triplet> t;
  const double w = -alpha / static_cast<double>(g.degree());
  for (Vertex v = 0; v < g.n(); ++v) {
    if (g.self_loops(v) > 0)
      throw Error(ErrorCode::PreconditionViolated,
                  "PageRank graph has a self-loop at vertex " + std::to_string(v), v);
    t.push_back({v, v, 1.0});
    for (Vertex x : g.neighbors(v))
      if (x > v) t.push_back({v, x, w});
  }
  return SddMatrix::from_triplets(g.n(), t, Validation::Strict);
}

PageRankResult personalized_pagerank(const RegularGraph& g, double alpha, const VectorOracle* b,
                                     Vertex u, double epsilon, std::uint64_t seed,
                                     const PageRankOptions& options) {
  const SddMatrix s = pagerank_matrix(g, alpha);
  VectorOracle uniform;
  if (b == nullptr) {
    std::vector<double> dense(g.n(), (1.0 - alpha) / static_cast<double>(g.n()));
    uniform = VectorOracle::from_dense(dense);
    b = &uniform;
  }
  SddPlanOptions plan;
  plan.rule = options.rule;
  plan.threads = options.threads;
  PageRankResult out;
  out.params = plan_params_sdd((alpha + 1.0) / 2.0, epsilon, b->nnz(), 1.0, 1.0, plan);
  out.estimate = estimate_coordinate_sdd(s, *b, u, out.params, seed);
  return out;
}

}  // namespace localsolve
