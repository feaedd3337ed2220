#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gls/errors.hpp"
#include "gls/rational.hpp"

namespace gls {

// Tolerance for partition endpoints and probability-vector sums.
inline constexpr double kValidationTolerance = 1e-12;

// A digit e = (j,k): branch k of system j. Ordered lexicographically.
struct Digit {
  std::size_t j = 0;
  std::size_t k = 0;

  friend auto operator<=>(const Digit&, const Digit&) = default;
};

inline std::string to_string(const Digit& e) {
  return "(" + std::to_string(e.j) + "," + std::to_string(e.k) + ")";
}

/// One finite GLS IFS: a partition 0 = r_0 < ... < r_B = 1 with an
/// orientation flag per cell. Branch k maps [0,1] onto [r_k, r_{k+1}],
/// reversing orientation when the flag is set:
///
///   h_k(x) = r_k + flip_k * l_k + (-1)^flip_k * x * l_k,   l_k = r_{k+1} - r_k.
///
/// With flip_k = 1 this sends 0 to r_{k+1} and 1 to r_k. (Adding the bare
/// flag instead of flip_k * l_k would leave [r_k, r_{k+1}].)
class GlsSystem {
 public:
  GlsSystem(std::vector<double> partition, std::vector<int> flips)
      : partition_(std::move(partition)) {
    validate_shape(flips);
    widths_.resize(partition_.size() - 1);
    for (std::size_t k = 0; k + 1 < partition_.size(); ++k) {
      widths_[k] = partition_[k + 1] - partition_[k];
    }
  }

  // Exact partition points; cell widths are differenced as rationals before
  // conversion, so e.g. (0, 1/3, 2/3, 1) yields three identical widths.
  GlsSystem(const std::vector<Rational>& partition, std::vector<int> flips) {
    partition_.reserve(partition.size());
    for (const auto& r : partition) partition_.push_back(r.to_double());
    validate_shape(flips);
    widths_.resize(partition_.size() - 1);
    for (std::size_t k = 0; k + 1 < partition.size(); ++k) {
      auto w = checked_sub(partition[k + 1], partition[k]);
      widths_[k] = w ? w->to_double() : partition_[k + 1] - partition_[k];
    }
  }

  std::size_t size() const { return widths_.size(); }
  std::span<const double> partition() const { return partition_; }
  double point(std::size_t k) const { return partition_.at(k); }
  double width(std::size_t k) const { return widths_.at(k); }
  bool flipped(std::size_t k) const { return flips_.at(k) != 0; }

  double apply(std::size_t k, double x) const {
    if (k >= size()) throw ValidationError("branch index " + std::to_string(k) + " out of range");
    if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("h_k argument outside [0,1]");
    const double l = widths_[k];
    return flips_[k] ? partition_[k] + l - x * l : partition_[k] + x * l;
  }

  // Inverse of branch k, clamped to [0,1].
  double invert(std::size_t k, double y) const {
    const double l = widths_[k];
    double x = flips_[k] ? (partition_[k] + l - y) / l : (y - partition_[k]) / l;
    return std::clamp(x, 0.0, 1.0);
  }

  // Cell containing y: [r_k, r_{k+1}) for interior cells, the top cell closed.
  std::size_t cell_of(double y) const {
    auto it = std::upper_bound(partition_.begin() + 1, partition_.end() - 1, y);
    return static_cast<std::size_t>(it - (partition_.begin() + 1));
  }

 private:
  void validate_shape(const std::vector<int>& flips) {
    if (partition_.size() < 3) {
      throw ValidationError("partition needs at least 3 points (B >= 2)");
    }
    if (flips.size() + 1 != partition_.size()) {
      throw ValidationError("flips length " + std::to_string(flips.size()) +
                            " does not match partition with " +
                            std::to_string(partition_.size() - 1) + " cells");
    }
    for (int f : flips) {
      if (f != 0 && f != 1) throw ValidationError("flip values must be 0 or 1");
    }
    if (std::abs(partition_.front()) > kValidationTolerance) {
      throw ValidationError("partition must start at 0");
    }
    if (std::abs(partition_.back() - 1.0) > kValidationTolerance) {
      throw ValidationError("partition must end at 1");
    }
    partition_.front() = 0.0;
    partition_.back() = 1.0;
    for (std::size_t k = 0; k + 1 < partition_.size(); ++k) {
      if (!(partition_[k] < partition_[k + 1])) {
        throw ValidationError("partition is not strictly increasing at index " +
                              std::to_string(k + 1));
      }
    }
    flips_.assign(flips.begin(), flips.end());
  }

  std::vector<double> partition_;
  std::vector<double> widths_;
  std::vector<unsigned char> flips_;
};

inline GlsSystem make_gls_system(std::vector<double> partition, std::vector<int> flips) {
  return GlsSystem(std::move(partition), std::move(flips));
}

inline GlsSystem make_gls_system(const std::vector<Rational>& partition, std::vector<int> flips) {
  return GlsSystem(partition, std::move(flips));
}

/// A GLS number system with redundancy: J >= 2 systems together with the
/// driving weights p. The digit set E = {(j,k)} is enumerated in
/// lexicographic order; `index_of` and `digit` convert between a digit and
/// its position in that order.
class GlsFamily {
 public:
  GlsFamily(std::vector<GlsSystem> systems, std::vector<double> weights)
      : systems_(std::move(systems)), weights_(std::move(weights)) {
    if (systems_.size() < 2) throw ValidationError("a family needs at least 2 systems");
    if (weights_.size() != systems_.size()) {
      throw ValidationError("weights length does not match number of systems");
    }
    double total = 0.0;
    for (double p : weights_) {
      if (!(p > 0.0)) throw ValidationError("weights must be positive");
      total += p;
    }
    if (std::abs(total - 1.0) > kValidationTolerance) {
      throw ValidationError("weights must sum to 1");
    }
    offsets_.resize(systems_.size() + 1, 0.0);
    first_index_.resize(systems_.size() + 1, 0);
    for (std::size_t j = 0; j < systems_.size(); ++j) {
      offsets_[j + 1] = offsets_[j] + weights_[j];
      first_index_[j + 1] = first_index_[j] + systems_[j].size();
      for (std::size_t k = 0; k < systems_[j].size(); ++k) digits_.push_back({j, k});
    }
    offsets_.back() = 1.0;
  }

  std::size_t system_count() const { return systems_.size(); }
  std::size_t digit_count() const { return digits_.size(); }
  const GlsSystem& system(std::size_t j) const { return systems_.at(j); }
  std::span<const GlsSystem> systems() const { return systems_; }
  std::span<const double> weights() const { return weights_; }
  double weight(std::size_t j) const { return weights_.at(j); }
  // Left end of the driving cell of system j: sum of p_i over i < j.
  double weight_offset(std::size_t j) const { return offsets_.at(j); }
  std::span<const Digit> digits() const { return digits_; }
  Digit digit(std::size_t index) const { return digits_.at(index); }
  std::size_t first_index(std::size_t j) const { return first_index_.at(j); }

  bool contains(const Digit& e) const { return e.j < systems_.size() && e.k < systems_[e.j].size(); }

  std::size_t index_of(const Digit& e) const {
    if (!contains(e)) throw ValidationError("unknown digit " + to_string(e));
    return first_index_[e.j] + e.k;
  }

  double p(const Digit& e) const { return weights_.at(e.j); }
  double l(const Digit& e) const { return check(e).width(e.k); }
  bool flipped(const Digit& e) const { return check(e).flipped(e.k); }
  double left(const Digit& e) const { return check(e).point(e.k); }

  // Driving cell containing w: [c_j, c_{j+1}) with the top cell closed, so a
  // boundary point picks the coding that continues with a tail of zeros.
  std::size_t driving_cell(double w) const {
    auto it = std::upper_bound(offsets_.begin() + 1, offsets_.end() - 1, w);
    return static_cast<std::size_t>(it - (offsets_.begin() + 1));
  }

 private:
  const GlsSystem& check(const Digit& e) const {
    if (!contains(e)) throw ValidationError("unknown digit " + to_string(e));
    return systems_[e.j];
  }

  std::vector<GlsSystem> systems_;
  std::vector<double> weights_;
  std::vector<double> offsets_;
  std::vector<std::size_t> first_index_;
  std::vector<Digit> digits_;
};

inline GlsFamily make_family(std::vector<GlsSystem> systems, std::vector<double> weights) {
  return GlsFamily(std::move(systems), std::move(weights));
}

inline double apply_h(const GlsSystem& system, std::size_t k, double x) { return system.apply(k, x); }

// f_j(w) = p_j w + sum_{i<j} p_i.
inline double apply_f(const GlsFamily& family, std::size_t j, double w) {
  if (j >= family.system_count()) throw ValidationError("system index out of range");
  if (!(w >= 0.0 && w <= 1.0)) throw ValidationError("f_j argument outside [0,1]");
  return family.weight(j) * w + family.weight_offset(j);
}

// The planar map (w,x) -> A_e (w,x) + v_e for digit e. The second diagonal
// entry carries the orientation sign; translations are chosen so that the
// unit square lands exactly on the product cell of e.
struct AffineDigitData {
  std::array<double, 2> diagonal{};
  std::array<double, 2> translation{};

  std::array<double, 2> apply(const std::array<double, 2>& point) const {
    return {diagonal[0] * point[0] + translation[0], diagonal[1] * point[1] + translation[1]};
  }
};

inline AffineDigitData affine_data(const GlsFamily& family, const Digit& e) {
  const double l = family.l(e);
  const bool flip = family.flipped(e);
  return {{family.p(e), flip ? -l : l},
          {family.weight_offset(e.j), family.left(e) + (flip ? l : 0.0)}};
}

// GLS digit (s, K, t): sign flag, inverse width, and image of 0 under h_e.
struct DigitTriple {
  int s = 0;
  double K = 0.0;
  double t = 0.0;

  friend bool operator==(const DigitTriple&, const DigitTriple&) = default;
};

inline DigitTriple digit_triple(const GlsFamily& family, const Digit& e) {
  const double l = family.l(e);
  const bool flip = family.flipped(e);
  return {flip ? 1 : 0, 1.0 / l, family.left(e) + (flip ? l : 0.0)};
}

// One triple per digit, in the order of family.digits().
inline std::vector<DigitTriple> digit_set(const GlsFamily& family) {
  std::vector<DigitTriple> out;
  out.reserve(family.digit_count());
  for (const Digit& e : family.digits()) out.push_back(digit_triple(family, e));
  return out;
}

struct DominationReport {
  bool holds = true;
  std::vector<Digit> offenders;

  explicit operator bool() const { return holds; }
};

// Checks p_j > l_(j,k) for every digit.
inline DominationReport check_domination(const GlsFamily& family) {
  DominationReport report;
  for (const Digit& e : family.digits()) {
    if (!(family.p(e) > family.l(e))) report.offenders.push_back(e);
  }
  report.holds = report.offenders.empty();
  return report;
}

inline void require_domination(const GlsFamily& family) {
  auto report = check_domination(family);
  if (!report) {
    std::string msg = "domination p_e > l_e fails for digits";
    for (const Digit& e : report.offenders) msg += " " + to_string(e);
    throw HypothesisError(msg);
  }
}

}  // namespace gls
