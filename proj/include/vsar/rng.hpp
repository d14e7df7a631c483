#pragma once

// Deterministic random source shared by every generator in the library.
//
// std::mt19937_64 has a fully specified output sequence, but the standard
// distributions do not, so the conversions to doubles and bounded integers
// are done here. This keeps datasets byte-identical across standard
// library implementations.

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace vsar {

/// SplitMix64 finalizer; used to derive independent child seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept {
  return mix_seed(mix_seed(a) ^ (b * 0xd6e8feb86659fd93ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer on the closed range [lo, hi].
  int uniform_int(int lo, int hi) {
    if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    // Rejection sampling removes modulo bias.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return lo + static_cast<int>(x % span);
  }

  bool coin() { return (engine_() >> 63) != 0; }

  /// Fisher-Yates shuffle over any random-access range.
  template <typename Range>
  void shuffle(Range& r) {
    const auto n = static_cast<int>(std::size(r));
    for (int i = n - 1; i > 0; --i) {
      const int j = uniform_int(0, i);
      using std::swap;
      swap(r[i], r[j]);
    }
  }

  template <typename Range>
  auto& pick(Range& r) {
    return r[uniform_int(0, static_cast<int>(std::size(r)) - 1)];
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vsar
