#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "localsolve/rng.hpp"

namespace localsolve {

/// Vose's alias method over the nonzero support of a weight vector.
class AliasTable {
 public:
  AliasTable() = default;
  /// Weights must be nonnegative with a positive sum.
  explicit AliasTable(std::span<const double> weights);

  /// Index into the original weight vector.
  std::size_t sample(CounterRng& rng) const noexcept {
    const auto k = static_cast<std::size_t>(rng.below(prob_.size()));
    return rng.uniform() < prob_[k] ? support_[k] : support_[alias_[k]];
  }

  std::size_t support_size() const noexcept { return support_.size(); }
  /// Probability the table assigns to `index`, for testing.
  double probability_of(std::size_t index) const;

 private:
  std::vector<std::size_t> support_;
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

}  // namespace localsolve
