#pragma once

#include <cstdint>

#include "localsolve/local_solver.hpp"
#include "localsolve/regular_graph.hpp"
#include "localsolve/sdd_matrix.hpp"
#include "localsolve/vector_oracle.hpp"

namespace localsolve {

struct ReffOptions {
  bool lazy = true;
  SampleRule rule = SampleRule::EmpiricalBernstein;
  unsigned threads = 1;
};

struct ReffResult {
  double value = 0.0;
  double relative_epsilon = 0.0;
  Estimate estimate;
  SolveParams params;
};

/// x_u - x_v for L x = e_u - e_v, using the pair estimator with b0 = 2.
/// Throws SameVertex.
ReffResult effective_resistance(const RegularGraph& g, Vertex u, Vertex v, double epsilon,
                                double mu2_lower, std::uint64_t seed,
                                const ReffOptions& options = {});

/// S = I - alpha A/d. Throws PreconditionViolated for graphs with self-loops.
SddMatrix pagerank_matrix(const RegularGraph& g, double alpha);

struct PageRankOptions {
  SampleRule rule = SampleRule::EmpiricalBernstein;
  unsigned threads = 1;
};

struct PageRankResult {
  Estimate estimate;
  SolveParams params;
};

/// x_u for (I - alpha P) x = b with lambda~ bound (alpha + 1)/2. A null `b`
/// stands for the uniform vector (1 - alpha)/n.
PageRankResult personalized_pagerank(const RegularGraph& g, double alpha, const VectorOracle* b,
                                     Vertex u, double epsilon, std::uint64_t seed,
                                     const PageRankOptions& options = {});

}  // namespace localsolve
