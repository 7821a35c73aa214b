#pragma once

#include <cstdint>
#include <limits>

namespace localsolve {

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stream roles, each with its own key space. Walks from u and from v in a
/// pair estimate never share draws.
enum class StreamRole : std::uint64_t {
  WalkFromU = 1,
  WalkFromV = 2,
  Preprocessed = 3,
  Construction = 4,
  Experiment = 5,
  Amplify = 6,
};

/// Counter-based generator: draw k of the stream keyed by (seed, a, b) is
/// mix64(key + k * gamma), a pure function of its coordinates. Two streams
/// built from the same coordinates produce identical draws no matter which
/// thread runs them or in which order.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  constexpr CounterRng(std::uint64_t seed, std::uint64_t a = 0,
                       std::uint64_t b = 0) noexcept
      : key_(derive(seed, a, b)) {}

  constexpr CounterRng(std::uint64_t seed, StreamRole role,
                       std::uint64_t index = 0) noexcept
      : CounterRng(seed, static_cast<std::uint64_t>(role), index) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept { return next(); }

  constexpr std::uint64_t next() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGamma);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Exactly uniform integer in [0, bound). Lemire's multiply-shift with
  /// rejection, so every value has probability exactly 1/bound.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    std::uint64_t x = next();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = next();
        m = static_cast<unsigned __int128>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  constexpr bool coin() noexcept { return (next() >> 63) != 0; }

  /// Draws consumed so far.
  constexpr std::uint64_t position() const noexcept { return counter_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t a,
                                        std::uint64_t b) noexcept {
    std::uint64_t k = mix64(seed + kGamma);
    k = mix64(k ^ (a * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
    k = mix64(k ^ (b * 0xaef17502108ef2d9ULL + 0x2545f4914f6cdd1dULL));
    return k;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Seed for the i-th independent sub-run (trial, amplification round, ...).
constexpr std::uint64_t derive_seed(std::uint64_t seed, StreamRole role,
                                    std::uint64_t index) noexcept {
  return CounterRng(seed, role, index).next();
}

/// Fisher-Yates with CounterRng::below, so results do not depend on the
/// standard library's distribution implementations.
template <class RandomIt>
void shuffle(RandomIt first, RandomIt last, CounterRng& rng) {
  const auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    const auto j = rng.below(i);
    using std::swap;
    swap(first[i - 1], first[j]);
  }
}

}  // namespace localsolve
