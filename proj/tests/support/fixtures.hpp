#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "gls/gls.hpp"

namespace gls::testing {

inline std::vector<Rational> thirds() { return {{0, 1}, {1, 3}, {2, 3}, {1, 1}}; }

// Signed base-3 pair: H0 with h(x) = (x+k)/3, H1 with h(x) = (k+1-x)/3.
inline GlsSystem s1_h0() { return GlsSystem(thirds(), {0, 0, 0}); }
inline GlsSystem s1_h1() { return GlsSystem(thirds(), {1, 1, 1}); }

inline GlsFamily s1(double p0 = 0.5) { return GlsFamily({s1_h0(), s1_h1()}, {p0, 1.0 - p0}); }

// S1 with the skewed frequency vector (1/4, 1/8, 1/8, 1/6, 1/6, 1/6).
inline FrequencyVector s2_alpha(const GlsFamily& family) {
  return FrequencyVector(family, {0.25, 0.125, 0.125, 1.0 / 6, 1.0 / 6, 1.0 / 6});
}

inline FrequencyVector skewed_alpha(const GlsFamily& family) {
  return FrequencyVector(family, {0.97, 0.006, 0.006, 0.006, 0.006, 0.006});
}

// Mixed base 3 / base 4, no flips, p = (0.4, 0.6).
inline GlsFamily s3() {
  return GlsFamily({GlsSystem(thirds(), {0, 0, 0}),
                    GlsSystem(std::vector<Rational>{{0, 1}, {1, 4}, {1, 2}, {3, 4}, {1, 1}}, {0, 0, 0, 0})},
                   {0.4, 0.6});
}

inline std::vector<double> dirichlet(std::mt19937_64& rng, std::size_t n, double concentration = 1.0) {
  std::gamma_distribution<double> gamma(concentration, 1.0);
  std::vector<double> v(n);
  double total = 0.0;
  for (double& x : v) {
    x = gamma(rng) + 1e-6;
    total += x;
  }
  for (double& x : v) x /= total;
  return v;
}

// Random family satisfying p_j > l_(j,k) with at most max_digits digits.
inline GlsFamily random_family(std::mt19937_64& rng, std::size_t max_digits = 10) {
  std::uniform_int_distribution<std::size_t> jdist(2, 3);
  for (;;) {
    const std::size_t J = jdist(rng);
    std::vector<double> p = dirichlet(rng, J, 3.0);
    std::vector<std::size_t> B(J);
    std::size_t total = 0;
    bool ok = true;
    for (std::size_t j = 0; j < J; ++j) {
      // Domination needs B_j p_j > 1.
      const auto min_b = static_cast<std::size_t>(std::floor(1.0 / p[j])) + 1;
      B[j] = std::max<std::size_t>(2, min_b + std::uniform_int_distribution<std::size_t>(0, 1)(rng));
      total += B[j];
      ok = ok && B[j] <= max_digits;
    }
    if (!ok || total > max_digits) continue;

    std::vector<GlsSystem> systems;
    for (std::size_t j = 0; j < J && ok; ++j) {
      std::vector<double> widths;
      for (int attempt = 0; attempt < 1000; ++attempt) {
        widths = dirichlet(rng, B[j], 4.0);
        if (*std::max_element(widths.begin(), widths.end()) < p[j]) break;
        widths.clear();
      }
      if (widths.empty()) {
        ok = false;
        break;
      }
      std::vector<double> partition{0.0};
      for (double w : widths) partition.push_back(partition.back() + w);
      partition.back() = 1.0;
      std::vector<int> flips(B[j]);
      for (int& f : flips) f = std::uniform_int_distribution<int>(0, 1)(rng);
      systems.emplace_back(std::move(partition), std::move(flips));
    }
    if (!ok) continue;
    GlsFamily family(std::move(systems), std::move(p));
    if (check_domination(family)) return family;
  }
}

inline FrequencyVector random_alpha(std::mt19937_64& rng, const GlsFamily& family, double concentration = 1.0) {
  return FrequencyVector(family, dirichlet(rng, family.digit_count(), concentration));
}

}  // namespace gls::testing
