#include "localsolve/regular_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>

#include "localsolve/error.hpp"

namespace localsolve {

RegularGraph::RegularGraph(std::size_t n, std::size_t d, std::vector<Vertex> slots)
    : n_(n), d_(d), slots_(std::move(slots)) {
  if (slots_.size() != n_ * d_)
    throw Error(ErrorCode::NonRegular, "expected " + std::to_string(n_ * d_) + " slots, got " +
                                           std::to_string(slots_.size()));
  for (std::size_t i = 0; i < slots_.size(); ++i)
    if (slots_[i] >= n_) throw Error(ErrorCode::BadVertexId, "vertex id out of range", i / d_);

  std::vector<std::pair<Vertex, Vertex>> forward;
  forward.reserve(slots_.size());
  for (std::size_t v = 0; v < n_; ++v)
    for (Vertex w : neighbors(static_cast<Vertex>(v)))
      if (w != v) forward.emplace_back(static_cast<Vertex>(v), w);
  auto backward = forward;
  for (auto& [a, b] : backward) std::swap(a, b);
  std::sort(forward.begin(), forward.end());
  std::sort(backward.begin(), backward.end());
  if (forward != backward)
    throw Error(ErrorCode::NonRegular, "adjacency slots are not symmetric");
}

RegularGraph RegularGraph::from_edges(std::size_t n,
                                      std::span<const std::pair<Vertex, Vertex>> edges) {
  std::vector<std::size_t> degree(n, 0);
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n) throw Error(ErrorCode::BadVertexId, "edge endpoint out of range");
    ++degree[a];
    if (a != b) ++degree[b];
  }
  const std::size_t d = n == 0 ? 0 : degree[0];
  for (std::size_t v = 0; v < n; ++v)
    if (degree[v] != d)
      throw Error(ErrorCode::NonRegular,
                  "vertex " + std::to_string(v) + " has degree " + std::to_string(degree[v]) +
                      ", vertex 0 has " + std::to_string(d),
                  v);

  std::vector<Vertex> slots(n * d);
  std::vector<std::size_t> fill(n, 0);
  for (const auto& [a, b] : edges) {
    slots[a * d + fill[a]++] = b;
    if (a != b) slots[b * d + fill[b]++] = a;
  }
  return RegularGraph(n, d, std::move(slots));
}

std::size_t RegularGraph::self_loops(Vertex v) const noexcept {
  const auto nb = neighbors(v);
  return static_cast<std::size_t>(std::count(nb.begin(), nb.end(), v));
}

bool RegularGraph::is_simple() const noexcept {
  std::vector<Vertex> row;
  for (std::size_t v = 0; v < n_; ++v) {
    const auto nb = neighbors(static_cast<Vertex>(v));
    row.assign(nb.begin(), nb.end());
    std::sort(row.begin(), row.end());
    if (std::adjacent_find(row.begin(), row.end()) != row.end()) return false;
    if (std::binary_search(row.begin(), row.end(), static_cast<Vertex>(v))) return false;
  }
  return true;
}

RegularGraph RegularGraph::with_self_loops(std::size_t count) const {
  const std::size_t d = d_ + count;
  std::vector<Vertex> slots(n_ * d);
  for (std::size_t v = 0; v < n_; ++v) {
    const auto nb = neighbors(static_cast<Vertex>(v));
    std::copy(nb.begin(), nb.end(), slots.begin() + static_cast<std::ptrdiff_t>(v * d));
    std::fill_n(slots.begin() + static_cast<std::ptrdiff_t>(v * d + d_), count,
                static_cast<Vertex>(v));
  }
  return RegularGraph(n_, d, std::move(slots));
}

std::vector<std::pair<Vertex, Vertex>> RegularGraph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(n_ * d_ / 2 + n_);
  for (std::size_t v = 0; v < n_; ++v)
    for (Vertex w : neighbors(static_cast<Vertex>(v)))
      if (w >= v) out.emplace_back(static_cast<Vertex>(v), w);
  return out;
}

std::vector<std::size_t> RegularGraph::component_labels() const {
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(n_, unset);
  std::vector<Vertex> stack;
  std::size_t next = 0;
  for (std::size_t s = 0; s < n_; ++s) {
    if (label[s] != unset) continue;
    label[s] = next;
    stack.push_back(static_cast<Vertex>(s));
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : neighbors(v))
        if (label[w] == unset) {
          label[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  return label;
}

std::size_t RegularGraph::component_count() const {
  const auto labels = component_labels();
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

void RegularGraph::multiply_adjacency(std::span<const double> x, std::span<double> y) const {
  for (std::size_t v = 0; v < n_; ++v) {
    double acc = 0.0;
    for (Vertex w : neighbors(static_cast<Vertex>(v))) acc += x[w];
    y[v] = acc;
  }
}

void RegularGraph::multiply_laplacian(std::span<const double> x, std::span<double> y) const {
  const auto d = static_cast<double>(d_);
  for (std::size_t v = 0; v < n_; ++v) {
    double acc = 0.0;
    for (Vertex w : neighbors(static_cast<Vertex>(v))) acc += x[w];
    y[v] = d * x[v] - acc;
  }
}

std::size_t RegularGraph::ball_size(Vertex source, std::size_t radius) const {
  std::vector<int> dist(n_, -1);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  std::size_t count = 1;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    if (static_cast<std::size_t>(dist[v]) == radius) continue;
    for (Vertex w : neighbors(v))
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        ++count;
        queue.push_back(w);
      }
  }
  return count;
}

std::vector<std::pair<Vertex, double>> transition_outcomes(const RegularGraph& g, Vertex v,
                                                           bool lazy) {
  std::map<Vertex, double> acc;
  const double step = lazy ? 0.5 / static_cast<double>(g.degree())
                           : 1.0 / static_cast<double>(g.degree());
  for (Vertex w : g.neighbors(v)) acc[w] += step;
  if (lazy) acc[v] += 0.5;
  return {acc.begin(), acc.end()};
}

}  // namespace localsolve
