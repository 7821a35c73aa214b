#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "localsolve/rng.hpp"

namespace localsolve {

using Vertex = std::uint32_t;

/// Unweighted d-regular multigraph stored as n*d adjacency slots.
///
/// Every vertex owns exactly d slots. A parallel edge occupies one slot per
/// copy at each endpoint; a self-loop occupies a single slot at its vertex.
/// With that convention a uniformly chosen slot realises the random walk
/// with transition matrix A/d, and adding d self-loop slots to every vertex
/// gives the lazy walk (A + dI)/(2d).
class RegularGraph {
 public:
  RegularGraph() = default;

  /// `slots` holds n*d entries, vertex v's neighbours at [v*d, (v+1)*d).
  /// Throws BadVertexId or NonRegular (asymmetric slot multiset).
  RegularGraph(std::size_t n, std::size_t d, std::vector<Vertex> slots);

  /// Builds from an undirected edge list. A pair (v, v) adds one self-loop
  /// slot. Throws NonRegular if degrees differ.
  static RegularGraph from_edges(std::size_t n,
                                 std::span<const std::pair<Vertex, Vertex>> edges);

  std::size_t n() const noexcept { return n_; }
  std::size_t degree() const noexcept { return d_; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {slots_.data() + static_cast<std::size_t>(v) * d_, d_};
  }
  Vertex slot(Vertex v, std::size_t k) const noexcept {
    return slots_[static_cast<std::size_t>(v) * d_ + k];
  }
  const std::vector<Vertex>& slots() const noexcept { return slots_; }

  /// Number of self-loop slots at v, i.e. A_vv.
  std::size_t self_loops(Vertex v) const noexcept;
  bool is_simple() const noexcept;

  /// Same graph with `count` extra self-loop slots per vertex.
  RegularGraph with_self_loops(std::size_t count) const;

  /// Each undirected edge once: u < v pairs repeated by multiplicity, and one
  /// (v, v) entry per self-loop slot.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  /// Component label per vertex, labels 0..count-1 in order of first vertex.
  std::vector<std::size_t> component_labels() const;
  std::size_t component_count() const;

  /// y = A x.
  void multiply_adjacency(std::span<const double> x, std::span<double> y) const;
  /// y = L x = d x - A x.
  void multiply_laplacian(std::span<const double> x, std::span<double> y) const;

  /// Vertices within graph distance `radius` of `source` (inclusive).
  std::size_t ball_size(Vertex source, std::size_t radius) const;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<Vertex> slots_;
};

/// One step of the simple random walk: a uniformly chosen slot of v.
inline Vertex step_uniform(const RegularGraph& g, Vertex v, CounterRng& rng) noexcept {
  return g.slot(v, static_cast<std::size_t>(rng.below(g.degree())));
}

/// One step of the lazy walk: stay with probability 1/2, otherwise a uniform
/// slot. Uses a single draw over 2d equally likely outcomes.
inline Vertex step_lazy(const RegularGraph& g, Vertex v, CounterRng& rng) noexcept {
  const std::size_t d = g.degree();
  const auto k = static_cast<std::size_t>(rng.below(2 * d));
  const Vertex w = g.slot(v, k < d ? k : k - d);
  const Vertex move = Vertex{0} - static_cast<Vertex>(k < d);
  return (w & move) | (v & ~move);
}

/// Steps a lazy walk stays put before its next move. Geometric with
/// success probability 1/2, read off the trailing zeros of fresh draws.
inline std::uint64_t lazy_stay_count(CounterRng& rng) noexcept {
  std::uint64_t extra = 0;
  for (;;) {
    const std::uint64_t x = rng.next();
    if (x != 0) return extra + static_cast<std::uint64_t>(std::countr_zero(x));
    extra += 64;
  }
}

/// Exact one-step distribution from v as (vertex, probability) with each
/// distinct vertex listed once, sorted by vertex.
std::vector<std::pair<Vertex, double>> transition_outcomes(const RegularGraph& g,
                                                           Vertex v, bool lazy);

}  // namespace localsolve
