#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace gls {

// splitmix64 finalizer; used to derive independent per-sample seeds from a
// master seed and a counter.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
  return mix64(mix64(master) ^ mix64(counter + 0x632be59bd9b4e019ULL));
}

// mt19937_64 with a platform-independent mapping to [0,1) and to indices.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Draws an index from the distribution whose cumulative sums are `cdf`
  // (last entry 1 up to rounding). Zero-mass indices are never returned.
  std::size_t pick(std::span<const double> cdf) {
    double u = uniform() * cdf.back();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it != cdf.end()) return static_cast<std::size_t>(it - cdf.begin());
    // u rounded up to the total mass; fall back to the last index with mass.
    std::size_t idx = cdf.size() - 1;
    while (idx > 0 && cdf[idx] == cdf[idx - 1]) --idx;
    return idx;
  }

 private:
  std::mt19937_64 engine_;
};

inline std::vector<double> cumulative(std::span<const double> weights) {
  std::vector<double> cdf(weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    cdf[i] = acc;
  }
  return cdf;
}

}  // namespace gls
