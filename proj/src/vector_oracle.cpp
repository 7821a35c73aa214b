#include "localsolve/vector_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "localsolve/error.hpp"

namespace localsolve {

VectorOracle::Counters::Counters(std::size_t n) : seen((n + 63) / 64) {}

VectorOracle::VectorOracle(std::size_t n, std::vector<std::pair<std::size_t, double>> entries)
    : values_(n, 0.0), counters_(std::make_unique<Counters>(n)) {
  std::sort(entries.begin(), entries.end());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto [i, value] = entries[k];
    if (i >= n)
      throw Error(ErrorCode::IndexOutOfRange,
                  "index " + std::to_string(i) + " outside length " + std::to_string(n), i);
    if (k > 0 && entries[k - 1].first == i)
      throw Error(ErrorCode::ParseError, "index " + std::to_string(i) + " listed twice", i);
    if (value == 0.0) continue;
    values_[i] = value;
    entries_.emplace_back(i, value);
    max_abs_ = std::max(max_abs_, std::abs(value));
  }
}

VectorOracle VectorOracle::from_dense(std::span<const double> values) {
  std::vector<std::pair<std::size_t, double>> entries;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] != 0.0) entries.emplace_back(i, values[i]);
  return VectorOracle(values.size(), std::move(entries));
}

VectorOracle::VectorOracle(const VectorOracle& other)
    : values_(other.values_),
      entries_(other.entries_),
      max_abs_(other.max_abs_),
      counters_(std::make_unique<Counters>(other.values_.size())) {}

VectorOracle& VectorOracle::operator=(const VectorOracle& other) {
  if (this != &other) *this = VectorOracle(other);
  return *this;
}

double VectorOracle::probe(std::size_t i) const {
  if (i >= values_.size())
    throw Error(ErrorCode::IndexOutOfRange,
                "probe " + std::to_string(i) + " outside length " + std::to_string(n()), i);
  counters_->probes.fetch_add(1, std::memory_order_relaxed);
  mark(i);
  return values_[i];
}

void VectorOracle::reset_counters() const noexcept {
  counters_->probes.store(0, std::memory_order_relaxed);
  counters_->distinct.store(0, std::memory_order_relaxed);
  for (auto& w : counters_->seen) w.store(0, std::memory_order_relaxed);
}

}  // namespace localsolve
