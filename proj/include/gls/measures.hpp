#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "gls/codec.hpp"
#include "gls/frequency.hpp"
#include "gls/random.hpp"

namespace gls {

// mu_alpha of the cylinder [word]: product of alpha over the word.
inline double mu_cylinder(const GlsFamily& family, const FrequencyVector& alpha, std::span<const Digit> word) {
  double mass = 1.0;
  for (const Digit& e : word) mass *= alpha[family.index_of(e)];
  return mass;
}

// nu_alpha of the driving cylinder interval f_{j_1} o ... o f_{j_m}([0,1]).
inline double nu_interval(const FrequencyVector& alpha, std::span<const std::size_t> jword) {
  double mass = 1.0;
  for (std::size_t j : jword) {
    if (j >= alpha.marginals().size()) throw ValidationError("driving index out of range");
    mass *= alpha.marginal(j);
  }
  return mass;
}

inline double fibre_factor(const GlsFamily& family, const FrequencyVector& alpha, const Digit& e) {
  const double aj = alpha.marginal(e.j);
  if (!(aj > 0.0)) {
    throw HypothesisError("fibre measure undefined: alpha_" + std::to_string(e.j) + " = 0");
  }
  return alpha[family.index_of(e)] / aj;
}

// m_{w,alpha} of the fibre fundamental interval of word: product of
// alpha_(j,k) / alpha_j.
inline double m_fibre_mass(const GlsFamily& family, const FrequencyVector& alpha, std::span<const Digit> word) {
  double mass = 1.0;
  for (const Digit& e : word) mass *= fibre_factor(family, alpha, e);
  return mass;
}

// Natural log of m_fibre_mass, summed term by term; usable at depths where
// the product itself underflows.
inline double log_m_fibre_mass(const GlsFamily& family, const FrequencyVector& alpha, std::span<const Digit> word) {
  double acc = 0.0;
  for (const Digit& e : word) acc += std::log(fibre_factor(family, alpha, e));
  return acc;
}

// Delta_w(k_1..k_m) = h_{e_1} o ... o h_{e_m}([0,1]).
struct FundamentalInterval {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t depth = 0;
  double width = 1.0;      // product of l_e
  double log_width = 0.0;  // sum of log l_e
};

inline FundamentalInterval fundamental_interval(const GlsFamily& family, std::span<const Digit> word) {
  if (word.empty()) throw ValidationError("fundamental interval of an empty word");
  FundamentalInterval iv;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (!family.contains(*it)) throw ValidationError("unknown digit " + to_string(*it));
    const GlsSystem& sys = family.system(it->j);
    const double a = sys.apply(it->k, iv.lo);
    const double b = sys.apply(it->k, iv.hi);
    iv.lo = std::min(a, b);
    iv.hi = std::max(a, b);
  }
  for (const Digit& e : word) {
    iv.width *= family.l(e);
    iv.log_width += std::log(family.l(e));
  }
  iv.depth = word.size();
  return iv;
}

// n i.i.d. driving indices with law (alpha_j); nu_alpha-typical codings.
inline JSequence sample_w(const FrequencyVector& alpha, std::size_t n, std::uint64_t seed) {
  const auto cdf = cumulative(alpha.marginals());
  Rng rng(seed);
  JSequence out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(rng.pick(cdf));
  return out;
}

}  // namespace gls
