#include "localsolve/alias_table.hpp"

#include <numeric>

#include "localsolve/error.hpp"

namespace localsolve {

AliasTable::AliasTable(std::span<const double> weights) {
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0.0) throw Error(ErrorCode::PreconditionViolated, "negative weight", i);
    if (weights[i] > 0.0) {
      support_.push_back(i);
      total += weights[i];
    }
  }
  if (support_.empty()) throw Error(ErrorCode::PreconditionViolated, "all weights are zero");

  const std::size_t m = support_.size();
  std::vector<double> scaled(m);
  for (std::size_t k = 0; k < m; ++k)
    scaled[k] = weights[support_[k]] * static_cast<double>(m) / total;

  prob_.assign(m, 1.0);
  alias_.resize(m);
  std::iota(alias_.begin(), alias_.end(), 0u);
  std::vector<std::uint32_t> small, large;
  for (std::size_t k = 0; k < m; ++k)
    (scaled[k] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(k));
  while (!small.empty() && !large.empty()) {
    const auto s = small.back();
    small.pop_back();
    const auto l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (auto k : small) prob_[k] = 1.0;
  for (auto k : large) prob_[k] = 1.0;
}

double AliasTable::probability_of(std::size_t index) const {
  const double m = static_cast<double>(prob_.size());
  double p = 0.0;
  for (std::size_t k = 0; k < prob_.size(); ++k) {
    if (support_[k] == index) p += prob_[k] / m;
    if (support_[alias_[k]] == index) p += (1.0 - prob_[k]) / m;
  }
  return p;
}

}  // namespace localsolve
