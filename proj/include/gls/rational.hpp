#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include "gls/errors.hpp"

namespace gls {

// Exact rational used for user-supplied partition points so that cell widths
// such as 1 - 2/3 are formed before the single conversion to double.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw ValidationError("rational with zero denominator");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // Returns nullopt on overflow of the reduced result.
  friend std::optional<Rational> checked_sub(const Rational& a, const Rational& b) {
    __int128 n = static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr __int128 kMax = INT64_MAX;
    if (n > kMax || -n > kMax || d > kMax) return std::nullopt;
    return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }

 private:
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

namespace detail {

inline std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ValidationError("cannot parse number '" + std::string(whole) + "'");
  }
  return v;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace detail

// Parses "a/b", "-a/b", plain integers and plain decimals ("0.25") exactly.
// Exponent notation is rejected; use parse_real for that.
inline Rational parse_rational(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    return Rational(detail::parse_int(detail::trim(s.substr(0, slash)), text),
                    detail::parse_int(detail::trim(s.substr(slash + 1)), text));
  }
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto dot = s.find('.');
  std::string digits(s.substr(0, dot));
  std::int64_t den = 1;
  if (dot != std::string_view::npos) {
    std::string_view frac = s.substr(dot + 1);
    if (frac.size() > 17) throw ValidationError("too many decimals in '" + std::string(text) + "'");
    digits += frac;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  }
  if (digits.empty()) throw ValidationError("cannot parse number '" + std::string(text) + "'");
  std::int64_t num = detail::parse_int(digits, text);
  return Rational(negative ? -num : num, den);
}

// Parses a real given either exactly (see parse_rational) or in any format
// accepted by strtod.
inline double parse_real(std::string_view text) {
  try {
    return parse_rational(text).to_double();
  } catch (const ValidationError&) {
    std::string s(detail::trim(text));
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
      throw ValidationError("cannot parse number '" + std::string(text) + "'");
    }
    return v;
  }
}

}  // namespace gls
