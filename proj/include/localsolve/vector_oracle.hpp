#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace localsolve {

/// Read-counted access to a right-hand side b.
///
/// Counters are atomic, so concurrent probes from worker threads are counted
/// exactly. Hot loops can batch the total count through probe_batched() and
/// commit(); the distinct-index bitmap is always updated immediately.
class VectorOracle {
 public:
  VectorOracle() : VectorOracle(0, {}) {}

  /// `entries` are (index, value) pairs. Zero values are dropped.
  /// Throws IndexOutOfRange for index >= n and ParseError for a repeated
  /// index.
  VectorOracle(std::size_t n, std::vector<std::pair<std::size_t, double>> entries);

  static VectorOracle from_dense(std::span<const double> values);

  VectorOracle(VectorOracle&&) noexcept = default;
  VectorOracle& operator=(VectorOracle&&) noexcept = default;
  VectorOracle(const VectorOracle& other);
  VectorOracle& operator=(const VectorOracle& other);

  std::size_t n() const noexcept { return values_.size(); }

  /// b_i, counted. Throws IndexOutOfRange.
  double probe(std::size_t i) const;

  /// b_i, counted into `pending`; call commit(pending) once the batch is
  /// done. No bounds check.
  double probe_batched(std::size_t i, std::uint64_t& pending) const noexcept {
    ++pending;
    mark(i);
    return values_[i];
  }
  void commit(std::uint64_t pending) const noexcept {
    counters_->probes.fetch_add(pending, std::memory_order_relaxed);
  }

  /// b_i without touching the counters.
  double peek(std::size_t i) const noexcept { return values_[i]; }

  std::size_t nnz() const noexcept { return entries_.size(); }
  double max_abs() const noexcept { return max_abs_; }
  std::span<const std::pair<std::size_t, double>> entries() const noexcept {
    return entries_;
  }
  const std::vector<double>& dense() const noexcept { return values_; }

  std::uint64_t probe_count() const noexcept {
    return counters_->probes.load(std::memory_order_relaxed);
  }
  std::size_t distinct_probes() const noexcept {
    return counters_->distinct.load(std::memory_order_relaxed);
  }
  void reset_counters() const noexcept;

 private:
  struct Counters {
    explicit Counters(std::size_t n);
    std::atomic<std::uint64_t> probes{0};
    std::atomic<std::size_t> distinct{0};
    std::vector<std::atomic<std::uint64_t>> seen;
  };

  void mark(std::size_t i) const noexcept {
    auto& word = counters_->seen[i >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if ((word.load(std::memory_order_relaxed) & bit) != 0) return;
    if ((word.fetch_or(bit, std::memory_order_relaxed) & bit) == 0)
      counters_->distinct.fetch_add(1, std::memory_order_relaxed);
  }

  std::vector<double> values_;
  std::vector<std::pair<std::size_t, double>> entries_;
  double max_abs_ = 0.0;
  std::unique_ptr<Counters> counters_;
};

}  // namespace localsolve
