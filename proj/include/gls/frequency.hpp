#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "gls/core.hpp"

namespace gls {

/// Digit frequency vector alpha = (alpha_e), indexed like family.digits().
/// Zero entries are allowed; marginals alpha_j sum alpha_(j,k) over k.
class FrequencyVector {
 public:
  FrequencyVector(const GlsFamily& family, std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() != family.digit_count()) {
      throw ValidationError("frequency vector has " + std::to_string(values_.size()) +
                            " entries, family has " + std::to_string(family.digit_count()) +
                            " digits");
    }
    double total = 0.0;
    for (double a : values_) {
      if (!(a >= 0.0) || !std::isfinite(a)) {
        throw ValidationError("frequency vector entries must be nonnegative");
      }
      total += a;
    }
    if (std::abs(total - 1.0) > kValidationTolerance) {
      throw ValidationError("frequency vector must sum to 1");
    }
    marginals_.assign(family.system_count(), 0.0);
    system_of_.reserve(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const std::size_t j = family.digit(i).j;
      marginals_[j] += values_[i];
      system_of_.push_back(j);
    }
  }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t index) const { return values_[index]; }
  std::span<const double> values() const { return values_; }
  std::span<const double> marginals() const { return marginals_; }
  double marginal(std::size_t j) const { return marginals_.at(j); }
  std::size_t system_of(std::size_t index) const { return system_of_[index]; }

  // alpha_(j,k) / alpha_j for every digit of system j.
  std::vector<double> conditional(const GlsFamily& family, std::size_t j) const {
    if (!(marginals_.at(j) > 0.0)) {
      throw HypothesisError("undefined conditional frequencies: alpha_" + std::to_string(j) +
                            " = 0");
    }
    const std::size_t first = family.first_index(j);
    std::vector<double> out(family.system(j).size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = values_[first + k] / marginals_[j];
    return out;
  }

  void require_positive_marginals() const {
    for (std::size_t j = 0; j < marginals_.size(); ++j) {
      if (!(marginals_[j] > 0.0)) {
        throw HypothesisError("fibre results need alpha_j > 0 for every system; alpha_" +
                              std::to_string(j) + " = 0");
      }
    }
  }

  static FrequencyVector uniform(const GlsFamily& family) {
    return FrequencyVector(family, std::vector<double>(family.digit_count(),
                                                       1.0 / static_cast<double>(family.digit_count())));
  }

  // alpha_e = p_j l_e: the frequencies of Lebesgue-typical points.
  static FrequencyVector lebesgue(const GlsFamily& family) {
    std::vector<double> v;
    for (const Digit& e : family.digits()) v.push_back(family.p(e) * family.l(e));
    return FrequencyVector(family, std::move(v));
  }

 private:
  std::vector<double> values_;
  std::vector<double> marginals_;
  std::vector<std::size_t> system_of_;
};

}  // namespace gls
