#pragma once

#include <cstdint>
#include <vector>

namespace linord {

/// SplitMix64 (Steele/Lea/Vigna). The one generator used for all seeded
/// output; no platform RNG anywhere. Reproducibility contract:
///   stream(seed, tag) = SplitMix64{ mix64(seed ^ mix64(tag)) }
/// Tag namespaces are fixed per use site (see generators.cpp); per-cell value
/// streams are keyed by the cell's row-major index, so drawn values do not
/// depend on selection order or thread count.
struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

inline std::uint64_t mix64(std::uint64_t x) {
  SplitMix64 g{x};
  return g.next();
}

inline SplitMix64 stream(std::uint64_t seed, std::uint64_t tag) {
  return SplitMix64{mix64(seed ^ mix64(tag))};
}

/// Unbiased draw in [0, n) by rejection from the top of the 64-bit range.
inline std::uint64_t bounded(SplitMix64& g, std::uint64_t n) {
  if (n == 0) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = g.next();
  } while (v >= limit);
  return v % n;
}

inline long long uniform_int(SplitMix64& g, long long lo, long long hi) {
  return lo + static_cast<long long>(bounded(g, static_cast<std::uint64_t>(hi - lo) + 1));
}

/// 53-bit uniform in [0, 1).
inline double uniform01(SplitMix64& g) {
  return static_cast<double>(g.next() >> 11) * 0x1.0p-53;
}

template <typename T>
void fisher_yates(SplitMix64& g, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(bounded(g, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace linord
