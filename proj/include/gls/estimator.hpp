#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "gls/codec.hpp"
#include "gls/detail/parallel.hpp"
#include "gls/frequency.hpp"
#include "gls/measures.hpp"
#include "gls/random.hpp"

namespace gls {

// Samples in [0,1]^D together with the parameters that generated them.
template <std::size_t D>
struct PointCloud {
  std::vector<std::array<double, D>> points;
  std::size_t depth = 0;
  std::uint64_t seed = 0;

  std::size_t size() const { return points.size(); }
};

using PlanarCloud = PointCloud<2>;
using FibreCloud = PointCloud<1>;

struct ScalingFit {
  std::vector<double> scales;      // decreasing
  std::vector<double> statistics;  // one per scale
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of the linear fit
};

enum class EntropyEstimator {
  plug_in,            // sum (n_i/M) log(n_i/M)
  coverage_adjusted,  // Chao-Shen: coverage-scaled Horvitz-Thompson entropy
};

// n i.i.d. digits with law alpha.
inline Word sample_word(const GlsFamily& family, const FrequencyVector& alpha, std::size_t n, std::uint64_t seed) {
  const auto cdf = cumulative(alpha.values());
  Rng rng(seed);
  Word out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(family.digit(rng.pick(cdf)));
  return out;
}

/// M points of pi(supp mu_alpha), each the midpoint of the depth-n cylinder
/// rectangle of an independent mu_alpha-word. Sample i uses a seed derived
/// from (seed, i), so the cloud does not depend on the thread count.
inline PlanarCloud sample_points(const GlsFamily& family, const FrequencyVector& alpha, std::size_t n,
                                 std::size_t samples, std::uint64_t seed, unsigned threads = 0) {
  if (n == 0) throw ValidationError("depth must be positive");
  PlanarCloud cloud;
  cloud.depth = n;
  cloud.seed = seed;
  cloud.points.resize(samples);
  detail::parallel_for(samples, [&](std::size_t i) {
    const DecodedPoint p = decode(family, sample_word(family, alpha, n, derive_seed(seed, i)));
    cloud.points[i] = {p.w, p.x};
  }, threads);
  return cloud;
}

/// Points of one fibre: the driving coding of w is drawn once from
/// (alpha_j), then every sample draws k_m from alpha_(j_m,k)/alpha_(j_m) and
/// keeps the midpoint of its fundamental interval.
inline FibreCloud sample_fibre_points(const GlsFamily& family, const FrequencyVector& alpha, std::size_t n,
                                      std::size_t samples, std::uint64_t seed, unsigned threads = 0) {
  if (n == 0) throw ValidationError("depth must be positive");
  alpha.require_positive_marginals();
  const JSequence jseq = sample_w(alpha, n, seed);
  std::vector<std::vector<double>> cdfs;
  for (std::size_t j = 0; j < family.system_count(); ++j) cdfs.push_back(cumulative(alpha.conditional(family, j)));

  FibreCloud cloud;
  cloud.depth = n;
  cloud.seed = seed;
  cloud.points.resize(samples);
  detail::parallel_for(samples, [&](std::size_t i) {
    Rng rng(derive_seed(~seed, i));
    std::vector<std::size_t> ks(n);
    for (std::size_t m = 0; m < n; ++m) ks[m] = rng.pick(cdfs[jseq[m]]);
    double x = 0.5;
    for (std::size_t m = n; m-- > 0;) x = family.system(jseq[m]).apply(ks[m], x);
    cloud.points[i] = {x};
  }, threads);
  return cloud;
}

namespace detail {

inline std::vector<double> validated_scales(std::span<const double> scales) {
  if (scales.size() < 3) throw ValidationError("scaling fit needs at least 3 scales");
  std::vector<double> out(scales.begin(), scales.end());
  for (double d : out) {
    if (!(d > 1e-9 && d <= 1.0)) throw ValidationError("scales must lie in (1e-9, 1]");
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw ValidationError("scales must be distinct");
  return out;
}

// Occupancy counts of the grid with mesh delta.
template <std::size_t D>
std::vector<std::uint64_t> box_counts(const PointCloud<D>& cloud, double delta) {
  const auto cells = static_cast<std::uint64_t>(std::ceil(1.0 / delta - 1e-9));
  std::vector<std::uint64_t> keys;
  keys.reserve(cloud.size());
  for (const auto& p : cloud.points) {
    std::uint64_t key = 0;
    for (std::size_t d = 0; d < D; ++d) {
      const double c = std::clamp(p[d], 0.0, 1.0);
      const auto idx = std::min(static_cast<std::uint64_t>(c / delta), cells - 1);
      key = key * cells + idx;
    }
    keys.push_back(key);
  }
  std::sort(keys.begin(), keys.end());
  std::vector<std::uint64_t> counts;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    counts.push_back(j - i);
    i = j;
  }
  return counts;
}

inline double negative_entropy(std::span<const std::uint64_t> counts, std::size_t total, EntropyEstimator estimator) {
  const double m = static_cast<double>(total);
  double acc = 0.0;
  if (estimator == EntropyEstimator::plug_in) {
    for (auto c : counts) {
      const double p = static_cast<double>(c) / m;
      acc += p * std::log(p);
    }
    return acc;
  }
  const auto singletons = static_cast<double>(std::count(counts.begin(), counts.end(), std::uint64_t{1}));
  double coverage = 1.0 - singletons / m;
  if (coverage <= 0.0) coverage = 1.0 - (singletons - 1.0) / m;
  for (auto c : counts) {
    const double p = coverage * static_cast<double>(c) / m;
    const double seen = -std::expm1(m * std::log1p(-p));
    acc += p * std::log(p) / seen;
  }
  return acc;
}

inline ScalingFit fit_line(std::vector<double> scales, std::vector<double> x, std::vector<double> y) {
  const auto k = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  ScalingFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / k);
  fit.scales = std::move(scales);
  fit.statistics = std::move(y);
  if (!std::isfinite(fit.slope)) throw ValidationError("degenerate scaling fit");
  return fit;
}

}  // namespace detail

/// Information-dimension estimate: slope of sum_i (n_i/M) log(n_i/M)
/// against log delta over occupied grid boxes. The coverage-adjusted
/// estimator corrects the downward entropy bias on grids that have more
/// cells than samples.
template <std::size_t D>
ScalingFit grid_entropy_dim(const PointCloud<D>& cloud, std::span<const double> scales,
                            EntropyEstimator estimator = EntropyEstimator::coverage_adjusted) {
  if (cloud.points.empty()) throw ValidationError("empty point cloud");
  auto sorted = detail::validated_scales(scales);
  std::vector<double> x, y;
  for (double delta : sorted) {
    const auto counts = detail::box_counts(cloud, delta);
    x.push_back(std::log(delta));
    y.push_back(detail::negative_entropy(counts, cloud.size(), estimator));
  }
  return detail::fit_line(std::move(sorted), std::move(x), std::move(y));
}

// Box-counting diagnostic: slope of log N(delta) against -log delta.
template <std::size_t D>
ScalingFit box_count_dim(const PointCloud<D>& cloud, std::span<const double> scales) {
  if (cloud.points.empty()) throw ValidationError("empty point cloud");
  auto sorted = detail::validated_scales(scales);
  std::vector<double> x, y;
  for (double delta : sorted) {
    x.push_back(-std::log(delta));
    y.push_back(std::log(static_cast<double>(detail::box_counts(cloud, delta).size())));
  }
  return detail::fit_line(std::move(sorted), std::move(x), std::move(y));
}

inline ScalingFit estimate_dim_fibre(const GlsFamily& family, const FrequencyVector& alpha, std::size_t n,
                                     std::size_t samples, std::uint64_t seed, std::span<const double> scales,
                                     EntropyEstimator estimator = EntropyEstimator::coverage_adjusted) {
  return grid_entropy_dim(sample_fibre_points(family, alpha, n, samples, seed), scales, estimator);
}

// log m_{w,alpha}(Delta) / log |Delta| along every prefix of word.
inline std::vector<double> local_dim_fibre(const GlsFamily& family, const FrequencyVector& alpha,
                                           std::span<const Digit> word) {
  std::vector<double> out;
  out.reserve(word.size());
  double log_mass = 0.0;
  double log_width = 0.0;
  for (const Digit& e : word) {
    log_mass += std::log(fibre_factor(family, alpha, e));
    log_width += std::log(family.l(e));
    out.push_back(log_mass / log_width);
  }
  return out;
}

// delta_k = c^k for k = first .. first+count-1, with c the largest fibre
// contraction ratio, so grid lines follow the coarsest cylinder widths.
inline std::vector<double> default_scales(const GlsFamily& family, int first = 2, int count = 4) {
  double c = 0.0;
  for (const Digit& e : family.digits()) c = std::max(c, family.l(e));
  std::vector<double> out;
  for (int k = first; k < first + count; ++k) out.push_back(std::pow(c, k));
  return out;
}

}  // namespace gls
