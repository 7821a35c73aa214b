#include "localsolve/sdd_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "localsolve/error.hpp"

namespace localsolve {

namespace {

struct Entry {
  Vertex row;
  Vertex col;
  double value;
};

}  // namespace

SddMatrix SddMatrix::from_triplets(std::size_t n, std::span<const Triplet> entries,
                                   Validation validation) {
  SddMatrix m;
  m.diag_.assign(n, 0.0);
  std::vector<Entry> off;
  off.reserve(2 * entries.size());
  for (const auto& t : entries) {
    if (t.row >= n || t.col >= n)
      throw Error(ErrorCode::IndexOutOfRange, "entry outside a " + std::to_string(n) + "x" +
                                                  std::to_string(n) + " matrix",
                  std::max(t.row, t.col));
    if (!std::isfinite(t.value))
      throw Error(ErrorCode::ParseError, "non-finite entry", t.row);
    if (t.row == t.col) {
      m.diag_[t.row] += t.value;
    } else {
      off.push_back({t.row, t.col, t.value});
      off.push_back({t.col, t.row, t.value});
    }
  }
  std::sort(off.begin(), off.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  m.row_start_.assign(n + 1, 0);
  for (std::size_t i = 0; i < off.size();) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < off.size() && off[j].row == off[i].row && off[j].col == off[i].col)
      sum += off[j++].value;
    if (sum != 0.0) {
      m.entries_.push_back({off[i].col, sum});
      ++m.row_start_[off[i].row + 1];
    }
    i = j;
  }
  for (std::size_t i = 0; i < n; ++i) m.row_start_[i + 1] += m.row_start_[i];

  m.cumulative_.resize(m.entries_.size());
  m.d_max_ = 0.0;
  m.d_min_ = n == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(m.diag_[i] > 0.0))
      throw Error(ErrorCode::NonpositiveDiagonal,
                  "row " + std::to_string(i) + " has diagonal " + std::to_string(m.diag_[i]), i);
    double acc = 0.0;
    for (std::size_t k = m.row_start_[i]; k < m.row_start_[i + 1]; ++k) {
      acc += std::abs(m.entries_[k].value);
      m.cumulative_[k] = acc;
    }
    if (acc > m.diag_[i] * (1.0 + kDominanceSlack)) {
      if (validation == Validation::Strict)
        throw Error(ErrorCode::NotDiagonallyDominant,
                    "row " + std::to_string(i) + ": off-diagonal sum " + std::to_string(acc) +
                        " exceeds diagonal " + std::to_string(m.diag_[i]),
                    i);
      if (m.certificates_.diagonally_dominant) {
        m.certificates_.diagonally_dominant = false;
        m.certificates_.first_violation = i;
      }
    }
    m.d_max_ = std::max(m.d_max_, m.diag_[i]);
    m.d_min_ = std::min(m.d_min_, m.diag_[i]);
  }
  return m;
}

SddMatrix SddMatrix::laplacian(const RegularGraph& g) {
  std::vector<Triplet> t;
  t.reserve(g.n() * (g.degree() + 1));
  for (Vertex v = 0; v < g.n(); ++v) {
    t.push_back({v, v, static_cast<double>(g.degree() - g.self_loops(v))});
    for (Vertex w : g.neighbors(v))
      if (w > v) t.push_back({v, w, -1.0});
  }
  return from_triplets(g.n(), t, Validation::Strict);
}

void SddMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < n(); ++i) {
    double acc = diag_[i] * x[i];
    for (std::size_t k = row_start_[i]; k < row_start_[i + 1]; ++k)
      acc += entries_[k].value * x[entries_[k].col];
    y[i] = acc;
  }
}

void SddMatrix::multiply_normalized(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < n(); ++i) {
    const double si = 1.0 / std::sqrt(diag_[i]);
    double acc = diag_[i] * si * x[i];
    for (std::size_t k = row_start_[i]; k < row_start_[i + 1]; ++k) {
      const Vertex j = entries_[k].col;
      acc += entries_[k].value * x[j] / std::sqrt(diag_[j]);
    }
    y[i] = si * acc;
  }
}

std::vector<Triplet> SddMatrix::triplets() const {
  std::vector<Triplet> out;
  for (Vertex i = 0; i < n(); ++i) {
    out.push_back({i, i, diag_[i]});
    for (const auto& e : row(i))
      if (e.col > i) out.push_back({i, e.col, e.value});
  }
  return out;
}

std::vector<double> SddMatrix::to_dense() const {
  const std::size_t dim = n();
  std::vector<double> out(dim * dim, 0.0);
  for (Vertex i = 0; i < dim; ++i) {
    out[i * dim + i] = diag_[i];
    for (const auto& e : row(i)) out[i * dim + e.col] = e.value;
  }
  return out;
}

WalkOutcome step_lazy_signed(const SddMatrix& s, Vertex v, CounterRng& rng) noexcept {
  const double u = rng.uniform();
  if (u < 0.5) return {WalkOutcome::Kind::Stayed, v, 1};
  const auto cum = s.cumulative_abs(v);
  if (cum.empty()) return {WalkOutcome::Kind::Terminated, v, 0};
  const double dv = s.diag(v);
  const double target = (u - 0.5) * 2.0 * dv;
  auto it = std::upper_bound(cum.begin(), cum.end(), target);
  if (it == cum.end()) {
    // A tight row has no termination mass; rounding in the running sum must
    // not create any.
    if (cum.back() < dv * (1.0 - SddMatrix::kDominanceSlack))
      return {WalkOutcome::Kind::Terminated, v, 0};
    --it;
  }
  const auto& e = s.row(v)[static_cast<std::size_t>(it - cum.begin())];
  return {WalkOutcome::Kind::Moved, e.col, e.value < 0.0 ? 1 : -1};
}

std::vector<std::pair<WalkOutcome, double>> lazy_signed_outcomes(const SddMatrix& s, Vertex v) {
  std::vector<std::pair<WalkOutcome, double>> out;
  out.push_back({{WalkOutcome::Kind::Stayed, v, 1}, 0.5});
  const double dv = s.diag(v);
  double moved = 0.0;
  for (const auto& e : s.row(v)) {
    const double p = std::abs(e.value) / (2.0 * dv);
    moved += p;
    out.push_back({{WalkOutcome::Kind::Moved, e.col, e.value < 0.0 ? 1 : -1}, p});
  }
  const double tail = 0.5 - moved;
  if (tail > 0.5 * SddMatrix::kDominanceSlack)
    out.push_back({{WalkOutcome::Kind::Terminated, v, 0}, tail});
  return out;
}

}  // namespace localsolve
