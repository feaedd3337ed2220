#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "gls/core.hpp"

namespace gls {

// Finite prefix of a digit sequence in E^N.
using Word = std::vector<Digit>;
// Finite prefix of a driving sequence in {0..J-1}^N.
using JSequence = std::vector<std::size_t>;

// Midpoint of the image of [0,1]^2 under the composed word maps, the image
// rectangle itself, and its side lengths (products of p_e and l_e).
struct DecodedPoint {
  double w = 0.0;
  double x = 0.0;
  double w_lo = 0.0, w_hi = 1.0;
  double x_lo = 0.0, x_hi = 1.0;
  double w_width = 1.0;
  double x_width = 1.0;
};

// Greedy coding of w under the driving IFS. A boundary point between two
// driving cells goes to the upper cell, which yields the coding ending in a
// tail of zeros.
inline JSequence w_to_jseq(const GlsFamily& family, double w, std::size_t n) {
  if (!(w >= 0.0 && w <= 1.0)) throw ValidationError("w outside [0,1]");
  JSequence out;
  out.reserve(n);
  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t j = family.driving_cell(w);
    out.push_back(j);
    w = std::clamp((w - family.weight_offset(j)) / family.weight(j), 0.0, 1.0);
  }
  return out;
}

/// Encodes x along the given driving sequence: at each step the branch of
/// system j_m whose cell holds the current point is chosen and the point is
/// pulled back through that branch. This is one admissible representation;
/// the system has uncountably many others.
inline Word encode(const GlsFamily& family, std::span<const std::size_t> jseq, double x, std::size_t n) {
  if (jseq.size() < n) throw ValidationError("driving sequence shorter than requested depth");
  if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("x outside [0,1]");
  Word word;
  word.reserve(n);
  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t j = jseq[m];
    if (j >= family.system_count()) throw ValidationError("driving index out of range");
    const GlsSystem& sys = family.system(j);
    const std::size_t k = sys.cell_of(x);
    word.push_back({j, k});
    x = sys.invert(k, x);
  }
  return word;
}

// Composes the word maps on [0,1]^2, innermost digit first.
inline DecodedPoint decode(const GlsFamily& family, std::span<const Digit> word) {
  if (word.empty()) throw ValidationError("cannot decode an empty word");
  DecodedPoint out;
  double w_lo = 0.0, w_hi = 1.0, x_lo = 0.0, x_hi = 1.0;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const Digit& e = *it;
    if (!family.contains(e)) throw ValidationError("unknown digit " + to_string(e));
    const GlsSystem& sys = family.system(e.j);
    const double p = family.weight(e.j);
    const double c = family.weight_offset(e.j);
    w_lo = c + p * w_lo;
    w_hi = c + p * w_hi;
    double a = sys.apply(e.k, x_lo);
    double b = sys.apply(e.k, x_hi);
    x_lo = std::min(a, b);
    x_hi = std::max(a, b);
    out.w_width *= p;
    out.x_width *= sys.width(e.k);
  }
  out.w_lo = w_lo;
  out.w_hi = w_hi;
  out.x_lo = x_lo;
  out.x_hi = x_hi;
  out.w = 0.5 * (w_lo + w_hi);
  out.x = 0.5 * (x_lo + x_hi);
  return out;
}

inline std::vector<DigitTriple> to_triples(const GlsFamily& family, std::span<const Digit> word) {
  std::vector<DigitTriple> out;
  out.reserve(word.size());
  for (const Digit& e : word) out.push_back(digit_triple(family, e));
  return out;
}

// sum_m (-1)^(s_1+...+s_{m-1}) t_m / (K_1 ... K_{m-1}).
inline double series_partial_sum(std::span<const DigitTriple> triples) {
  if (triples.empty()) throw ValidationError("series needs at least one digit");
  double sum = 0.0;
  double scale = 1.0;
  int parity = 0;
  for (const DigitTriple& d : triples) {
    sum += (parity ? -1.0 : 1.0) * d.t * scale;
    parity ^= d.s;
    scale /= d.K;
  }
  return sum;
}

// Empirical frequency of each symbol 0..alphabet-1.
inline std::vector<double> symbol_frequencies(std::span<const std::size_t> symbols, std::size_t alphabet) {
  if (symbols.empty()) throw ValidationError("frequencies of an empty word");
  std::vector<double> counts(alphabet, 0.0);
  for (std::size_t s : symbols) {
    if (s >= alphabet) throw ValidationError("symbol outside alphabet");
    counts[s] += 1.0;
  }
  for (double& c : counts) c /= static_cast<double>(symbols.size());
  return counts;
}

// Empirical digit frequencies, indexed like family.digits().
inline std::vector<double> frequencies(const GlsFamily& family, std::span<const Digit> word) {
  std::vector<std::size_t> symbols;
  symbols.reserve(word.size());
  for (const Digit& e : word) symbols.push_back(family.index_of(e));
  return symbol_frequencies(symbols, family.digit_count());
}

inline JSequence first_coordinates(std::span<const Digit> word) {
  JSequence out;
  out.reserve(word.size());
  for (const Digit& e : word) out.push_back(e.j);
  return out;
}

}  // namespace gls
