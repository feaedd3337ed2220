#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gls/codec.hpp"
#include "gls/frequency.hpp"

namespace gls {

// All logarithms are natural; 0 log 0 = 0, so digits with alpha_e = 0 drop
// out of every sum.

// sum_e alpha_e log v_e over the support of alpha.
inline double weighted_log_sum(std::span<const double> alpha, std::span<const double> values) {
  double acc = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] > 0.0) acc += alpha[i] * std::log(values[i]);
  }
  return acc;
}

// Shannon entropy -sum p log p.
inline double entropy(std::span<const double> probabilities) {
  return -weighted_log_sum(probabilities, probabilities);
}

inline double entropy(const FrequencyVector& alpha) { return entropy(alpha.values()); }

namespace detail {

inline std::vector<double> digit_weights(const GlsFamily& family) {
  std::vector<double> out;
  for (const Digit& e : family.digits()) out.push_back(family.p(e));
  return out;
}

inline std::vector<double> digit_widths(const GlsFamily& family) {
  std::vector<double> out;
  for (const Digit& e : family.digits()) out.push_back(family.l(e));
  return out;
}

inline void check_size(const GlsFamily& family, const FrequencyVector& alpha) {
  if (alpha.size() != family.digit_count()) throw ValidationError("frequency vector size mismatch");
}

}  // namespace detail

struct LyapunovExponents {
  double chi1 = 0.0;  // -sum alpha_e log p_e, the weaker contraction
  double chi2 = 0.0;  // -sum alpha_e log l_e
};

// Lyapunov exponents of the Bernoulli measure mu_alpha. Under domination the
// norm of every product is the product of the p_e, which makes both
// exponents linear in alpha.
inline LyapunovExponents chi(const GlsFamily& family, const FrequencyVector& alpha) {
  detail::check_size(family, alpha);
  require_domination(family);
  return {-weighted_log_sum(alpha.values(), detail::digit_weights(family)),
          -weighted_log_sum(alpha.values(), detail::digit_widths(family))};
}

enum class DimensionArm { entropy_ratio, fibre_corrected };

inline const char* to_string(DimensionArm arm) {
  return arm == DimensionArm::entropy_ratio ? "entropy_ratio" : "fibre_corrected";
}

struct ArmValue {
  double value = 0.0;
  DimensionArm arm = DimensionArm::entropy_ratio;
};

namespace detail {

inline ArmValue min_arm(double first, double second) {
  ArmValue out = first <= second ? ArmValue{first, DimensionArm::entropy_ratio}
                                 : ArmValue{second, DimensionArm::fibre_corrected};
  out.value = std::clamp(out.value, 0.0, 2.0);
  return out;
}

}  // namespace detail

// min{ h / chi1, 1 + (h - chi1) / chi2 }, with the arm that attains it.
inline ArmValue lyapunov_dim_arm(const GlsFamily& family, const FrequencyVector& alpha) {
  const double h = entropy(alpha);
  const auto [chi1, chi2] = chi(family, alpha);
  return detail::min_arm(h / chi1, 1.0 + (h - chi1) / chi2);
}

inline double lyapunov_dim(const GlsFamily& family, const FrequencyVector& alpha) {
  return lyapunov_dim_arm(family, alpha).value;
}

/// Hausdorff dimension of the digit-frequency level set F(alpha), written
/// with the raw sums
///
///   min{ S_a / S_p, 1 + (S_a - S_p) / S_l },   S_v = sum_e alpha_e log v_e.
///
/// Negation is exact in floating point, so this agrees bit for bit with
/// lyapunov_dim.
inline double dim_level_set(const GlsFamily& family, const FrequencyVector& alpha) {
  detail::check_size(family, alpha);
  require_domination(family);
  const double sa = weighted_log_sum(alpha.values(), alpha.values());
  const double sp = weighted_log_sum(alpha.values(), detail::digit_weights(family));
  const double sl = weighted_log_sum(alpha.values(), detail::digit_widths(family));
  return detail::min_arm(sa / sp, 1.0 + (sa - sp) / sl).value;
}

// Dimension of the fibre level set F_w(alpha) for nu_alpha-typical w:
// (h - h_J) / chi2, h_J the entropy of the marginals. Requires alpha_j > 0.
inline double dim_fibre(const GlsFamily& family, const FrequencyVector& alpha) {
  detail::check_size(family, alpha);
  alpha.require_positive_marginals();
  const double h = entropy(alpha);
  const double hj = entropy(alpha.marginals());
  const double chi2 = -weighted_log_sum(alpha.values(), detail::digit_widths(family));
  if (!(chi2 > 0.0)) throw ValidationError("fibre Lyapunov exponent is zero");
  return std::clamp((h - hj) / chi2, 0.0, 1.0);
}

// Singular value function of diag(a, b) with |a|, |b| < 1.
inline double singular_value_function(double a, double b, double s) {
  const double hi = std::max(std::abs(a), std::abs(b));
  const double lo = std::min(std::abs(a), std::abs(b));
  return s < 1.0 ? std::pow(hi, s) : hi * std::pow(lo, s - 1.0);
}

inline double phi_s(const GlsFamily& family, std::span<const Digit> word, double s) {
  if (!(s >= 0.0 && s < 2.0)) throw ValidationError("singular value exponent must lie in [0,2)");
  require_domination(family);
  double a = 1.0, b = 1.0;
  for (const Digit& e : word) {
    a *= family.p(e);
    b *= family.l(e);
  }
  return singular_value_function(a, b, s);
}

// phi^s(A_e) under domination: p_e^s below 1, p_e l_e^(s-1) from 1 on.
inline double psi(const GlsFamily& family, const Digit& e, double s) {
  return s < 1.0 ? std::pow(family.p(e), s) : family.p(e) * std::pow(family.l(e), s - 1.0);
}

/// Pressure of log phi^s + sum_e q_e (1_[e] - alpha_e). Both terms are
/// multiplicative over cylinders, so the n-th approximant is already the
/// limit:
///
///   P = log sum_e psi_s(e) exp(q_e) - <q, alpha>.
inline double pressure(const GlsFamily& family, const FrequencyVector& alpha, double s,
                       std::span<const double> q) {
  detail::check_size(family, alpha);
  require_domination(family);
  if (!(s >= 0.0 && s <= 2.0)) throw ValidationError("pressure exponent must lie in [0,2]");
  if (q.size() != family.digit_count()) throw ValidationError("q has wrong length");
  double top = -std::numeric_limits<double>::infinity();
  std::vector<double> z(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    z[i] = std::log(psi(family, family.digit(i), s)) + q[i];
    top = std::max(top, z[i]);
  }
  double acc = 0.0;
  double linear = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    acc += std::exp(z[i] - top);
    linear += q[i] * alpha[i];
  }
  return top + std::log(acc) - linear;
}

struct PressureMinimizerOptions {
  int max_iterations = 200;
  double gradient_tolerance = 1e-12;
};

struct PressureMinimum {
  double value = 0.0;
  std::vector<std::size_t> support;  // digits with alpha_e > 0
  std::vector<double> q;             // minimizer on the support, sum zero
  int iterations = 0;
};

/// inf over q of pressure(s, q), by damped Newton on the support of alpha.
///
/// Digits with alpha_e = 0 are dropped: sending their q_e to -inf lowers the
/// pressure to the value on the support. The objective is invariant under
/// q -> q + c 1, so q is kept on the hyperplane sum q = 0 and the Newton
/// system uses H + 11^T / n, which is nonsingular there.
inline PressureMinimum inf_q_pressure(const GlsFamily& family, const FrequencyVector& alpha, double s,
                                      const PressureMinimizerOptions& options = {}) {
  detail::check_size(family, alpha);
  require_domination(family);
  if (!(s >= 0.0 && s <= 2.0)) throw ValidationError("pressure exponent must lie in [0,2]");

  PressureMinimum out;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] > 0.0) out.support.push_back(i);
  }
  const auto n = static_cast<Eigen::Index>(out.support.size());
  Eigen::VectorXd log_psi(n), a(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t idx = out.support[static_cast<std::size_t>(i)];
    log_psi[i] = std::log(psi(family, family.digit(idx), s));
    a[i] = alpha[idx];
  }

  Eigen::VectorXd q = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd pi(n);
  auto objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd* weights) {
    Eigen::VectorXd z = log_psi + x;
    const double top = z.maxCoeff();
    Eigen::VectorXd w = (z.array() - top).exp().matrix();
    const double total = w.sum();
    if (weights) *weights = w / total;
    return top + std::log(total) - a.dot(x);
  };

  double value = objective(q, &pi);
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  for (;;) {
    Eigen::VectorXd grad = pi - a;
    if (grad.lpNorm<Eigen::Infinity>() <= options.gradient_tolerance) break;
    if (out.iterations >= options.max_iterations) {
      throw ConvergenceError("pressure minimization did not converge at s = " + std::to_string(s));
    }
    ++out.iterations;
    Eigen::MatrixXd hessian = Eigen::MatrixXd(pi.asDiagonal()) - pi * pi.transpose() + ones;
    Eigen::VectorXd step = -hessian.ldlt().solve(grad);
    step.array() -= step.mean();

    const double slope = grad.dot(step);
    double t = 1.0;
    Eigen::VectorXd trial_pi(n);
    Eigen::VectorXd trial = q + step;
    double trial_value = objective(trial, &trial_pi);
    // Once the predicted decrease is below the rounding of the objective,
    // function values cannot rank steps; take the full Newton step.
    const bool resolvable = -slope > 1e-14 * (1.0 + std::abs(value));
    while (resolvable && trial_value > value + 1e-4 * t * slope && t > 1e-12) {
      t *= 0.5;
      trial = q + t * step;
      trial_value = objective(trial, &trial_pi);
    }
    if (!(trial_value <= value) && t <= 1e-12) {
      // No descent left at machine precision; the gradient is as small as
      // rounding allows.
      if (grad.lpNorm<Eigen::Infinity>() <= 1e-9) break;
      throw ConvergenceError("pressure line search stalled at s = " + std::to_string(s));
    }
    q = trial;
    q.array() -= q.mean();
    value = objective(q, &pi);
  }
  out.value = value;
  out.q.assign(q.data(), q.data() + n);
  return out;
}

struct VariationalOptions {
  double tolerance = 1e-8;
  int max_iterations = 200;
};

/// sup{ s in [0,2] : inf_q P(s, q) >= 0 } by bisection. The function of s is
/// strictly decreasing and piecewise linear with a kink at s = 1, which
/// bisection handles without special casing.
inline double dim_variational(const GlsFamily& family, const FrequencyVector& alpha,
                              const VariationalOptions& options = {}) {
  if (!(options.tolerance > 0.0)) throw ValidationError("tolerance must be positive");
  require_domination(family);
  auto g = [&](double s) { return inf_q_pressure(family, alpha, s).value; };
  if (g(2.0) >= 0.0) return 2.0;
  double lo = 0.0, hi = 2.0;
  if (g(lo) <= 0.0) return 0.0;
  for (int it = 0; hi - lo > options.tolerance; ++it) {
    if (it >= options.max_iterations) throw ConvergenceError("bisection did not reach tolerance");
    const double mid = 0.5 * (lo + hi);
    (g(mid) >= 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double dim_variational(const GlsFamily& family, const FrequencyVector& alpha, double tolerance) {
  return dim_variational(family, alpha, VariationalOptions{tolerance});
}

enum class DimensionMode { closed, variational, lyapunov, fibre, all };

inline DimensionMode parse_dimension_mode(const std::string& s) {
  if (s == "closed") return DimensionMode::closed;
  if (s == "variational") return DimensionMode::variational;
  if (s == "lyapunov") return DimensionMode::lyapunov;
  if (s == "fibre") return DimensionMode::fibre;
  if (s == "all") return DimensionMode::all;
  throw ValidationError("unknown mode '" + s + "'");
}

// Fields not requested by the mode, or not defined for alpha, stay empty.
struct DimensionReport {
  double entropy = 0.0;
  std::optional<double> chi1;
  std::optional<double> chi2;
  std::optional<double> lyapunov_dim;
  std::optional<double> dim_level_set;
  std::optional<double> dim_variational;
  std::optional<double> dim_fibre;
  std::optional<DimensionArm> arm;
  std::vector<std::string> notes;
};

inline DimensionReport dimension_report(const GlsFamily& family, const FrequencyVector& alpha,
                                        DimensionMode mode, double tolerance = 1e-8) {
  DimensionReport r;
  r.entropy = entropy(alpha);
  if (mode == DimensionMode::fibre) {
    r.dim_fibre = dim_fibre(family, alpha);
    r.chi2 = -weighted_log_sum(alpha.values(), detail::digit_widths(family));
    return r;
  }
  const auto exps = chi(family, alpha);
  r.chi1 = exps.chi1;
  r.chi2 = exps.chi2;
  const auto lyap = lyapunov_dim_arm(family, alpha);
  r.arm = lyap.arm;
  if (mode == DimensionMode::lyapunov || mode == DimensionMode::all) r.lyapunov_dim = lyap.value;
  if (mode == DimensionMode::closed || mode == DimensionMode::all) r.dim_level_set = dim_level_set(family, alpha);
  if (mode == DimensionMode::variational || mode == DimensionMode::all) {
    r.dim_variational = dim_variational(family, alpha, tolerance);
  }
  if (mode == DimensionMode::all) {
    try {
      r.dim_fibre = dim_fibre(family, alpha);
    } catch (const HypothesisError& err) {
      r.notes.emplace_back(err.what());
    }
  }
  return r;
}

}  // namespace gls
