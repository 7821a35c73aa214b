#include <cmath>
#include <map>
#include <sstream>

#include "doctest.h"
#include "localsolve/alias_table.hpp"
#include "localsolve/error.hpp"
#include "localsolve/generators.hpp"
#include "localsolve/io.hpp"
#include "localsolve/regular_graph.hpp"
#include "localsolve/rng.hpp"
#include "localsolve/sdd_matrix.hpp"
#include "localsolve/vector_oracle.hpp"

using namespace localsolve;

namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ParseError;
}

RegularGraph graph_from(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

SddMatrix matrix_from(const std::string& text, Validation v = Validation::Strict) {
  std::istringstream in(text);
  return load_sdd_matrix(in, v);
}

}  // namespace

TEST_CASE("edge lists") {
  const auto tri = graph_from("0 1\n1 2\n2 0");
  CHECK(tri.n() == 3);
  CHECK(tri.degree() == 2);

  const auto k4 = graph_from("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  CHECK(k4.n() == 4);
  CHECK(k4.degree() == 3);
  CHECK(k4.is_simple());

  CHECK(code_of([] { graph_from("0 1\n0 2"); }) == ErrorCode::NonRegular);
  CHECK(code_of([] { graph_from("0 x\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { graph_from("0 -1\n"); }) == ErrorCode::BadVertexId);
}

TEST_CASE("self-loops and multigraphs") {
  const auto g = RegularGraph::from_edges(1, std::vector<std::pair<Vertex, Vertex>>{{0, 0}, {0, 0}});
  CHECK(g.degree() == 2);
  CHECK(g.self_loops(0) == 2);
  CounterRng rng(1);
  for (int i = 0; i < 50; ++i) CHECK(step_uniform(g, 0, rng) == 0);

  const auto c4 = cycle_graph(4);
  const auto lazy = c4.with_self_loops(2);
  CHECK(lazy.degree() == 4);
  CHECK(lazy.self_loops(0) == 2);
  CHECK_FALSE(lazy.is_simple());
  CHECK(lazy.edges().size() == 4 + 8);
}

TEST_CASE("components and balls") {
  const auto two = RegularGraph::from_edges(
      6, std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  CHECK(two.component_count() == 2);
  const auto labels = two.component_labels();
  CHECK(labels[0] == 0);
  CHECK(labels[4] == 1);

  const auto ring = cycle_graph(10);
  CHECK(ring.ball_size(0, 0) == 1);
  CHECK(ring.ball_size(0, 2) == 5);
  CHECK(ring.ball_size(0, 20) == 10);
}

TEST_CASE("simple walk step") {
  const auto tri = cycle_graph(3);
  for (const auto& [v, p] : transition_outcomes(tri, 0, false)) {
    CHECK(v != 0);
    CHECK(p == doctest::Approx(0.5));
  }

  const auto k4 = complete_graph(4);
  CounterRng rng(42);
  std::map<Vertex, int> freq;
  const int steps = 100000;
  for (int i = 0; i < steps; ++i) ++freq[step_uniform(k4, 0, rng)];
  CHECK(freq.size() == 3);
  for (const auto& [v, c] : freq) CHECK(std::abs(c / double(steps) - 1.0 / 3.0) < 0.01);
}

TEST_CASE("lazy walk step") {
  const auto k4 = complete_graph(4);
  const auto out = transition_outcomes(k4, 0, true);
  REQUIRE(out.size() == 4);
  CHECK(out[0].second == doctest::Approx(0.5));
  CHECK(out[1].second == doctest::Approx(1.0 / 6.0));

  CounterRng rng(3);
  int stays = 0;
  const int steps = 60000;
  for (int i = 0; i < steps; ++i) stays += step_lazy(k4, 0, rng) == 0;
  CHECK(std::abs(stays / double(steps) - 0.5) < 0.01);

  CounterRng holds(9);
  double mean = 0.0;
  for (int i = 0; i < steps; ++i) mean += static_cast<double>(lazy_stay_count(holds));
  CHECK(mean / steps == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("SDD matrices from triplets") {
  const std::vector<Triplet> ok{{0, 0, 2}, {1, 1, 2}, {0, 1, 1}};
  const auto s = SddMatrix::from_triplets(2, ok);
  CHECK(s.is_sdd());
  CHECK(s.diag(0) == 2.0);
  REQUIRE(s.row(1).size() == 1);
  CHECK(s.row(1)[0].value == 1.0);

  const std::vector<Triplet> bad{{0, 0, 1}, {1, 1, 1}, {0, 1, 2}};
  try {
    SddMatrix::from_triplets(2, bad);
    FAIL("accepted a non-dominant matrix");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotDiagonallyDominant);
    REQUIRE(e.row().has_value());
    CHECK(*e.row() == 0);
  }
  const auto relaxed = SddMatrix::from_triplets(2, bad, Validation::Relaxed);
  CHECK_FALSE(relaxed.is_sdd());
  CHECK(relaxed.certificates().first_violation == 0);

  const std::vector<Triplet> neg{{0, 0, -1}, {1, 1, 1}};
  CHECK(code_of([&] { SddMatrix::from_triplets(2, neg); }) == ErrorCode::NonpositiveDiagonal);
}

TEST_CASE("MatrixMarket loader") {
  const auto tri = matrix_from(
      "%%MatrixMarket matrix coordinate real symmetric\n"
      "% triangle Laplacian\n"
      "3 3 6\n1 1 2\n2 2 2\n3 3 2\n2 1 -1\n3 1 -1\n3 2 -1\n");
  CHECK(tri.is_sdd());
  for (Vertex i = 0; i < 3; ++i) CHECK(tri.diag(i) == 2.0);
  CHECK(tri.abs_offdiagonal_sum(0) == 2.0);

  const auto general = matrix_from(
      "%%MatrixMarket matrix coordinate real general\n2 2 4\n1 1 2\n1 2 1\n2 1 1\n2 2 2\n");
  CHECK(general.row(0)[0].value == 1.0);

  CHECK(code_of([] {
          matrix_from("%%MatrixMarket matrix coordinate real general\n2 2 3\n1 1 2\n1 2 1\n2 2 2\n");
        }) == ErrorCode::NotSymmetric);
  CHECK(code_of([] {
          matrix_from(
              "%%MatrixMarket matrix coordinate real general\n2 2 4\n1 1 2\n1 2 1\n2 1 0.5\n2 2 2\n");
        }) == ErrorCode::NotSymmetric);
  CHECK(code_of([] {
          matrix_from("%%MatrixMarket matrix coordinate real symmetric\n2 2 3\n1 1 2\n2 2 2\n");
        }) == ErrorCode::ParseError);
  CHECK(code_of([] {
          matrix_from("%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 2\n3 3 2\n");
        }) != ErrorCode::NotDiagonallyDominant);
}

TEST_CASE("Laplacian export round trip") {
  const auto k4 = complete_graph(4);
  const auto l = SddMatrix::laplacian(k4);
  std::ostringstream out;
  write_matrix_market(out, l);
  const auto back = matrix_from(out.str());
  CHECK(back.to_dense() == l.to_dense());

  std::ostringstream eout;
  write_edge_list(eout, k4);
  const auto g = graph_from(eout.str());
  CHECK(g.slots() == k4.slots());
}

TEST_CASE("signed lazy step outcomes") {
  const auto two_i = SddMatrix::from_triplets(2, std::vector<Triplet>{{0, 0, 2}, {1, 1, 2}});
  auto o = lazy_signed_outcomes(two_i, 0);
  REQUIRE(o.size() == 2);
  CHECK(o[0].first.kind == WalkOutcome::Kind::Stayed);
  CHECK(o[0].second == 0.5);
  CHECK(o[1].first.kind == WalkOutcome::Kind::Terminated);
  CHECK(o[1].second == 0.5);

  const auto s = SddMatrix::from_triplets(2, std::vector<Triplet>{{0, 0, 2}, {1, 1, 2}, {0, 1, 1}});
  o = lazy_signed_outcomes(s, 0);
  REQUIRE(o.size() == 3);
  double moved = 0.0, term = 0.0;
  for (const auto& [w, p] : o) {
    if (w.kind == WalkOutcome::Kind::Moved) {
      CHECK(w.vertex == 1);
      CHECK(w.sign == -1);
      moved = p;
    }
    if (w.kind == WalkOutcome::Kind::Terminated) term = p;
  }
  CHECK(moved == doctest::Approx(0.25));
  CHECK(term == doctest::Approx(0.25));

  const auto lap = SddMatrix::laplacian(cycle_graph(5));
  for (const auto& [w, p] : lazy_signed_outcomes(lap, 2)) {
    CHECK(w.kind != WalkOutcome::Kind::Terminated);
    if (w.kind == WalkOutcome::Kind::Moved) CHECK(w.sign == 1);
  }
  CounterRng rng(5);
  for (int i = 0; i < 20000; ++i)
    CHECK(step_lazy_signed(lap, 2, rng).kind != WalkOutcome::Kind::Terminated);

  CounterRng rng2(6);
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < 80000; ++i) ++counts[static_cast<int>(step_lazy_signed(s, 0, rng2).kind)];
  CHECK(std::abs(counts[0] / 80000.0 - 0.25) < 0.01);
  CHECK(std::abs(counts[1] / 80000.0 - 0.5) < 0.01);
}

TEST_CASE("vector oracle counting") {
  const VectorOracle b(5, {{3, 1.5}});
  CHECK(b.probe(3) == 1.5);
  CHECK(b.probe_count() == 1);

  const VectorOracle empty(5, {});
  CHECK(empty.probe(0) == 0.0);
  CHECK(empty.probe(0) == 0.0);
  CHECK(empty.probe_count() == 2);
  CHECK(empty.distinct_probes() == 1);

  CHECK(code_of([&] { b.probe(5); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([] { VectorOracle(2, {{0, 1.0}, {0, 2.0}}); }) == ErrorCode::ParseError);

  const VectorOracle copy(b);
  CHECK(copy.probe_count() == 0);
  b.reset_counters();
  CHECK(b.probe_count() == 0);
  CHECK(b.distinct_probes() == 0);
}

TEST_CASE("vector file format") {
  std::istringstream in("# comment\n0 1\n3 -2.5\n");
  const auto b = load_vector(in, 4);
  CHECK(b.nnz() == 2);
  CHECK(b.peek(3) == -2.5);
  std::istringstream bad("7 1\n");
  CHECK(code_of([&] { load_vector(bad, 4); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("alias sampling") {
  const std::vector<double> w{0.0, 1.0, 3.0, 0.0, 4.0};
  const AliasTable t(w);
  CHECK(t.support_size() == 3);
  CHECK(t.probability_of(2) == doctest::Approx(3.0 / 8.0));
  CHECK(t.probability_of(0) == 0.0);
  CounterRng rng(11);
  std::map<std::size_t, int> freq;
  for (int i = 0; i < 80000; ++i) ++freq[t.sample(rng)];
  CHECK(freq.count(0) == 0);
  CHECK(std::abs(freq[4] / 80000.0 - 0.5) < 0.01);
}

TEST_CASE("counter RNG is reproducible") {
  CounterRng a(7, StreamRole::WalkFromU, 3), b(7, StreamRole::WalkFromU, 3),
      c(7, StreamRole::WalkFromV, 3);
  bool differs = false;
  for (int i = 0; i < 10; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    differs |= x != c.next();
  }
  CHECK(differs);
  CounterRng r(1);
  for (int i = 0; i < 1000; ++i) CHECK(r.below(6) < 6);
}

TEST_CASE("random regular graphs") {
  const auto g = random_regular_graph(100, 3, 5);
  CHECK(g.n() == 100);
  CHECK(g.is_simple());
  CHECK(random_regular_graph(100, 3, 5).slots() == g.slots());
  CHECK(code_of([] { random_regular_graph(5, 3, 1); }) == ErrorCode::PreconditionViolated);

  const auto e = random_expander(200, 3, 2);
  CHECK(e.component_count() == 1);
  CHECK(second_adjacency_eigenvalue(e) <= 2.0 * std::sqrt(2.0) + 0.1);
}
