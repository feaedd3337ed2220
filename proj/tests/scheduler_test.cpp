#include <gtest/gtest.h>

#include <random>

#include "gls/scheduler.hpp"
#include "support/fixtures.hpp"

namespace gls {
namespace {

TEST(RoundHalfAway, Ties) {
  EXPECT_EQ(round_half_away(0.5), 1);
  EXPECT_EQ(round_half_away(1.5), 2);
  EXPECT_EQ(round_half_away(2.4999), 2);
  EXPECT_EQ(round_half_away(-0.5), -1);
  EXPECT_EQ(round_half_away(3.0 * (1.0 / 6)), 1);
}

TEST(FreqSequence, HandValues) {
  const std::vector<double> alpha{0.5, 1.0 / 3, 1.0 / 6};
  EXPECT_EQ(freq_sequence(alpha, 6), (std::vector<std::size_t>{0, 1, 0, 2, 0, 1}));

  const std::vector<double> uniform(6, 1.0 / 6);
  EXPECT_EQ(freq_sequence(uniform, 6), (std::vector<std::size_t>{0, 1, 2, 3, 4, 5}));

  const std::vector<double> point{0.0, 1.0};
  EXPECT_EQ(freq_sequence(point, 4), (std::vector<std::size_t>{1, 1, 1, 1}));
}

TEST(FreqSequence, RejectsBadAlpha) {
  EXPECT_THROW(freq_sequence(std::vector<double>{0.5, 0.6}, 3), ValidationError);
  EXPECT_THROW(freq_sequence(std::vector<double>{1.5, -0.5}, 3), ValidationError);
  EXPECT_THROW(freq_sequence(std::vector<double>{}, 3), ValidationError);
}

TEST(FreqSequence, DeviationBound) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    std::vector<double> alpha = testing::dirichlet(rng, n, trial % 2 ? 0.3 : 2.0);
    if (trial % 5 == 0) {
      alpha[0] += alpha[1];
      alpha[1] = 0.0;
    }
    const auto seq = freq_sequence(alpha, 20000);
    EXPECT_LE(deviation(seq, alpha), static_cast<double>(n) + 1.0);
    const auto freq = symbol_frequencies(seq, n);
    for (std::size_t e = 0; e < n; ++e) EXPECT_NEAR(freq[e], alpha[e], (n + 1.0) / 20000);
  }
}

TEST(FreqSequence, FamilyWordMatchesSymbols) {
  const GlsFamily f = testing::s1();
  const FrequencyVector alpha = testing::s2_alpha(f);
  const Word word = freq_sequence(f, alpha, 100);
  const auto symbols = freq_sequence(alpha.values(), 100);
  for (std::size_t i = 0; i < word.size(); ++i) EXPECT_EQ(f.index_of(word[i]), symbols[i]);
  EXPECT_LE(deviation(f, word, alpha), 7.0);
}

TEST(Weave, ProjectionAndStrandDeviation) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    const GlsFamily f = testing::random_family(rng);
    const FrequencyVector alpha = testing::random_alpha(rng, f);
    const std::size_t n = 5000;
    JSequence jseq(n);
    for (auto& j : jseq) j = rng() % f.system_count();
    const Word word = weave(f, jseq, alpha, n);
    ASSERT_EQ(first_coordinates(word), jseq);
    for (std::size_t j = 0; j < f.system_count(); ++j) {
      std::vector<std::size_t> strand;
      for (const Digit& e : word) {
        if (e.j == j) strand.push_back(e.k);
      }
      if (strand.empty()) continue;
      EXPECT_LE(deviation(strand, alpha.conditional(f, j)), f.system(j).size() + 1.0);
    }
  }
}

TEST(Weave, HandValue) {
  const GlsFamily f = testing::s1();
  const Word word = weave(f, JSequence{0, 1, 0, 1}, FrequencyVector::uniform(f), 4);
  EXPECT_EQ(word, (Word{{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
}

TEST(Weave, SingleStrandIsTheConditionalSchedule) {
  const GlsFamily f = testing::s1();
  const FrequencyVector alpha = testing::s2_alpha(f);
  const Word word = weave(f, JSequence(30, 0), alpha, 30);
  const auto ks = freq_sequence(alpha.conditional(f, 0), 30);
  for (std::size_t i = 0; i < 30; ++i) EXPECT_EQ(word[i], (Digit{0, ks[i]}));
}

TEST(Weave, ZeroMarginalIsOnlyAnErrorWhenUsed) {
  const GlsFamily f = testing::s1();
  const FrequencyVector alpha(f, {0.5, 0.25, 0.25, 0, 0, 0});
  EXPECT_NO_THROW(weave(f, JSequence{0, 0, 0}, alpha, 3));
  EXPECT_THROW(weave(f, JSequence{0, 1}, alpha, 2), HypothesisError);
  EXPECT_THROW(weave(f, JSequence{0}, alpha, 2), ValidationError);
}

TEST(Deviation, SpecBounds) {
  const std::vector<double> alpha{0.5, 1.0 / 3, 1.0 / 6};
  EXPECT_LE(deviation(freq_sequence(alpha, 60), alpha), 4.0);
  EXPECT_EQ(deviation(std::vector<std::size_t>(10, 1), std::vector<double>{0, 1, 0}), 0.0);
  const GlsFamily f = testing::s1();
  const FrequencyVector uniform = FrequencyVector::uniform(f);
  EXPECT_LE(deviation(f, freq_sequence(f, uniform, 600), uniform), 7.0);
}

TEST(Deviation, HandValue) {
  const std::vector<double> alpha{0.5, 0.5};
  EXPECT_DOUBLE_EQ(deviation(std::vector<std::size_t>{0, 0, 0}, alpha), 1.5);
  EXPECT_DOUBLE_EQ(deviation(std::vector<std::size_t>{0, 1, 0, 1}, alpha), 0.5);
}

}  // namespace
}  // namespace gls
