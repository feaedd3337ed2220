#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gls/codec.hpp"
#include "gls/frequency.hpp"

namespace gls {

// Nearest integer, halves rounded away from zero. Values within kTieSlack of
// a half count as the half, so that m * (1/6) at m = 3 behaves like 0.5
// regardless of the rounding of 1/6.
inline constexpr double kTieSlack = 1e-9;

inline std::int64_t round_half_away(double v) {
  return v >= 0.0 ? static_cast<std::int64_t>(std::floor(v + 0.5 + kTieSlack))
                  : -static_cast<std::int64_t>(std::floor(-v + 0.5 + kTieSlack));
}

/// Emits symbols 0..N-1 so that symbol e has asymptotic frequency alpha_e.
///
/// Stage m emits, in increasing symbol order, every e whose rounded count
/// round(m alpha_e) exceeds round((m-1) alpha_e). After any prefix the count
/// of each symbol stays within N + 1 of (prefix length) * alpha_e.
class FrequencyScheduler {
 public:
  explicit FrequencyScheduler(std::vector<double> alpha) : alpha_(std::move(alpha)) {
    if (alpha_.empty()) throw ValidationError("empty frequency vector");
    double total = 0.0;
    for (double a : alpha_) {
      if (!(a >= 0.0)) throw ValidationError("frequencies must be nonnegative");
      total += a;
    }
    if (std::abs(total - 1.0) > kValidationTolerance) {
      throw ValidationError("frequencies must sum to 1");
    }
    rounded_.assign(alpha_.size(), 0);
  }

  std::size_t next() {
    while (cursor_ == pending_.size()) advance_stage();
    return pending_[cursor_++];
  }

  std::uint64_t stage() const { return stage_; }

 private:
  void advance_stage() {
    pending_.clear();
    cursor_ = 0;
    ++stage_;
    const double m = static_cast<double>(stage_);
    for (std::size_t e = 0; e < alpha_.size(); ++e) {
      const std::int64_t r = round_half_away(m * alpha_[e]);
      if (r == rounded_[e] + 1) pending_.push_back(e);
      rounded_[e] = r;
    }
    // Some alpha_e >= 1/N, and its rounded count grows at least once every
    // N stages, so a longer empty run means the state is corrupt.
    if (pending_.empty()) {
      if (++empty_run_ > alpha_.size() + 1) throw std::logic_error("scheduler stalled");
    } else {
      empty_run_ = 0;
    }
  }

  std::vector<double> alpha_;
  std::vector<std::int64_t> rounded_;
  std::vector<std::size_t> pending_;
  std::size_t cursor_ = 0;
  std::uint64_t stage_ = 0;
  std::size_t empty_run_ = 0;
};

// First n symbols of the frequency construction.
inline std::vector<std::size_t> freq_sequence(std::span<const double> alpha, std::size_t n) {
  FrequencyScheduler scheduler(std::vector<double>(alpha.begin(), alpha.end()));
  std::vector<std::size_t> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(scheduler.next());
  return out;
}

inline Word freq_sequence(const GlsFamily& family, const FrequencyVector& alpha, std::size_t n) {
  if (alpha.size() != family.digit_count()) throw ValidationError("frequency vector size mismatch");
  Word out;
  out.reserve(n);
  for (std::size_t s : freq_sequence(alpha.values(), n)) out.push_back(family.digit(s));
  return out;
}

/// Attaches branch digits to a fixed driving sequence. Each system j keeps
/// its own scheduler for the conditional frequencies alpha_(j,k)/alpha_j,
/// and position l takes the next digit from the scheduler of j_l.
inline Word weave(const GlsFamily& family, std::span<const std::size_t> jseq,
                  const FrequencyVector& alpha, std::size_t n) {
  if (jseq.size() < n) throw ValidationError("driving sequence shorter than requested depth");
  std::vector<std::optional<FrequencyScheduler>> strands(family.system_count());
  Word out;
  out.reserve(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::size_t j = jseq[pos];
    if (j >= family.system_count()) throw ValidationError("driving index out of range");
    if (!strands[j]) strands[j].emplace(alpha.conditional(family, j));
    out.push_back({j, strands[j]->next()});
  }
  return out;
}

// max over symbols e and prefix lengths m of |count_e(m) - m alpha_e|.
inline double deviation(std::span<const std::size_t> symbols, std::span<const double> alpha) {
  std::vector<std::int64_t> counts(alpha.size(), 0);
  double worst = 0.0;
  for (std::size_t m = 0; m < symbols.size(); ++m) {
    if (symbols[m] >= alpha.size()) throw ValidationError("symbol outside alphabet");
    ++counts[symbols[m]];
    const double len = static_cast<double>(m + 1);
    for (std::size_t e = 0; e < alpha.size(); ++e) {
      worst = std::max(worst, std::abs(static_cast<double>(counts[e]) - len * alpha[e]));
    }
  }
  return worst;
}

inline double deviation(const GlsFamily& family, std::span<const Digit> word, const FrequencyVector& alpha) {
  std::vector<std::size_t> symbols;
  symbols.reserve(word.size());
  for (const Digit& e : word) symbols.push_back(family.index_of(e));
  return deviation(symbols, alpha.values());
}

}  // namespace gls
