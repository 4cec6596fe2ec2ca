#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "support/random_text.hpp"
#include "usum/rouge.hpp"

namespace usum {
namespace {

Tokens toks(const std::string& s) { return tokenize(s); }

TEST(RougeN, IdenticalCandidate) {
  const Tokens m = toks("global warming melts the polar ice");
  EXPECT_EQ(rouge_n(m, {m}, 1), 1.0);
  EXPECT_EQ(rouge_n(m, {m}, 2), 1.0);
}

TEST(RougeN, DisjointVocabulary) {
  EXPECT_EQ(rouge_n(toks("a b c"), {toks("x y z")}, 1), 0.0);
  EXPECT_EQ(rouge_n(toks("a b c"), {toks("x y z")}, 2), 0.0);
}

TEST(RougeN, BigramExample) {
  const auto r = rouge_n_ratio(toks("a b c"), {toks("a b d")}, 2);
  EXPECT_EQ(r.matched, 1.0);
  EXPECT_EQ(r.total, 2.0);
  EXPECT_EQ(r.value(), 0.5);
}

TEST(RougeN, ClippedPerModelAndSummedAcrossModels) {
  // Candidate has "a" once; each model has it twice.
  const auto r = rouge_n_ratio(toks("a b"), {toks("a a"), toks("a c a")}, 1);
  EXPECT_EQ(r.matched, 2.0);
  EXPECT_EQ(r.total, 5.0);
}

TEST(RougeN, ShortModelContributesNothing) {
  const auto r = rouge_n_ratio(toks("a b"), {toks("a"), toks("a b")}, 2);
  EXPECT_EQ(r.matched, 1.0);
  EXPECT_EQ(r.total, 1.0);
}

TEST(RougeN, Errors) {
  EXPECT_THROW(rouge_n(toks("a"), {}, 1), PreconditionError);
  EXPECT_THROW(rouge_n(toks("a"), {Tokens{}}, 1), PreconditionError);
  EXPECT_THROW(rouge_n(toks("a"), {toks("a")}, 0), PreconditionError);
  EXPECT_THROW(rouge_n(toks("a b"), {toks("a")}, 2), PreconditionError);
}

TEST(RougeN, ModelOrderDoesNotMatter) {
  testing::TextGen gen(71, 8);
  for (int trial = 0; trial < 50; ++trial) {
    const Tokens c = gen.words(1, 12);
    std::vector<Tokens> models = {gen.words(2, 10), gen.words(2, 10), gen.words(2, 10)};
    const double r1 = rouge_n(c, models, 1), r2 = rouge_n(c, models, 2);
    std::reverse(models.begin(), models.end());
    EXPECT_EQ(rouge_n(c, models, 1), r1);
    EXPECT_EQ(rouge_n(c, models, 2), r2);
    std::rotate(models.begin(), models.begin() + 1, models.end());
    EXPECT_EQ(rouge_n(c, models, 1), r1);
  }
}

TEST(Su4, IdenticalAndDisjoint) {
  const Tokens m = toks("a b c d e f g h");
  EXPECT_EQ(rouge_su4(m, {m}), 1.0);
  EXPECT_EQ(rouge_su4(toks("a b"), {toks("x y z")}), 0.0);
}

TEST(Su4, SkipBigramReach) {
  const Tokens seq = toks("a b c d e f g");
  const auto counts = detail::su4_counts(seq);
  for (const char* partner : {"b", "c", "d", "e", "f"}) EXPECT_EQ(counts.count(detail::join_unit("a", partner)), 1u);
  EXPECT_EQ(counts.count(detail::join_unit("a", "g")), 0u);
  // Unit multiset equals exhaustive pair generation filtered by gap.
  const auto brute = testing::enumerate_su_units(seq, kSu4MaxGap);
  EXPECT_EQ(detail::total_units(counts), brute.size());
  for (const auto& unit : brute) {
    const std::string key = unit.size() == 1 ? unit[0] : detail::join_unit(unit[0], unit[1]);
    EXPECT_EQ(counts.at(key), static_cast<std::size_t>(std::count(brute.begin(), brute.end(), unit)));
  }
}

TEST(Su4, MatchesOracle) {
  testing::TextGen gen(72, 6);
  for (int trial = 0; trial < 100; ++trial) {
    const Tokens c = gen.words(0, 14);
    const std::vector<Tokens> models = {gen.words(1, 14), gen.words(0, 9)};
    const auto r = rouge_su4_ratio(c, models);
    const auto [m, t] = testing::brute_rouge_su(c, models, kSu4MaxGap);
    EXPECT_EQ(r.matched, m);
    EXPECT_EQ(r.total, t);
  }
}

TEST(RougeW, IdenticalAndDisjoint) {
  const Tokens m = toks("a b c d e");
  EXPECT_NEAR(rouge_w(m, {m}), 1.0, 1e-12);
  EXPECT_EQ(rouge_w(toks("a b"), {toks("x y z")}), 0.0);
}

TEST(RougeW, SwappedPairExample) {
  const Tokens c = toks("a b c d"), m = toks("a c b d");
  const double brute = testing::brute_wlcs(c, m, 1.2);
  EXPECT_NEAR(weighted_lcs(c, m, 1.2), brute, 1e-12);
  // Three isolated matches (a, b or c, d) and nothing longer.
  EXPECT_NEAR(brute, 3.0, 1e-12);
  EXPECT_NEAR(rouge_w(c, {m}, 1.2), std::pow(3.0, 1.0 / 1.2) / 4.0, 1e-12);
}

TEST(RougeW, LongRunBeatsScatteredMatches) {
  // A single run of 4 weighs 4^1.2.
  EXPECT_NEAR(weighted_lcs(toks("x a b c d"), toks("a b c d y"), 1.2), std::pow(4.0, 1.2), 1e-12);
}

TEST(RougeW, ExactWhereGreedyRunTrackingIsNot) {
  const Tokens x = toks("b b c a a b"), y = toks("b b c a");
  const double brute = testing::brute_wlcs(x, y, 1.2);
  EXPECT_NEAR(weighted_lcs(x, y, 1.2), brute, 1e-12);
  EXPECT_NEAR(brute, std::pow(4.0, 1.2), 1e-12);
}

TEST(RougeW, MatchesOracle) {
  testing::TextGen gen(73, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const Tokens c = gen.words(0, 8);
    const std::vector<Tokens> models = {gen.words(1, 8), gen.words(1, 6)};
    const double exponent = trial % 2 == 0 ? 1.2 : 1.0 + gen.unit();
    for (const auto& m : models) EXPECT_NEAR(weighted_lcs(c, m, exponent), testing::brute_wlcs(c, m, exponent), 1e-12);
    const auto r = rouge_w_ratio(c, models, exponent);
    const auto [num, den] = testing::brute_rouge_w(c, models, exponent);
    EXPECT_NEAR(r.matched, num, 1e-12);
    EXPECT_EQ(r.total, den);
  }
}

TEST(RougeW, Errors) {
  EXPECT_THROW(rouge_w(toks("a"), {toks("a")}, 0.5), PreconditionError);
  EXPECT_THROW(rouge_w(toks("a"), {}), PreconditionError);
  EXPECT_THROW(rouge_w(toks("a"), {Tokens{}}), PreconditionError);
}

TEST(Rouge, AppendingAnUnseenTokenKeepsEveryValue) {
  testing::TextGen gen(74, 8);
  for (int trial = 0; trial < 50; ++trial) {
    Tokens c = gen.words(1, 10);
    const std::vector<Tokens> models = {gen.words(2, 10), gen.words(2, 10)};
    const double r1 = rouge_n(c, models, 1), r2 = rouge_n(c, models, 2);
    const double w = rouge_w(c, models), su = rouge_su4(c, models);
    c.push_back("unseenx");
    EXPECT_EQ(rouge_n(c, models, 1), r1);
    EXPECT_EQ(rouge_n(c, models, 2), r2);
    EXPECT_EQ(rouge_w(c, models), w);
    EXPECT_EQ(rouge_su4(c, models), su);
  }
}

TEST(Rouge, ValuesInUnitInterval) {
  testing::TextGen gen(75, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const Tokens c = gen.words(0, 15);
    const std::vector<Tokens> models = {gen.words(2, 12)};
    for (double v : {rouge_n(c, models, 1), rouge_n(c, models, 2), rouge_w(c, models), rouge_su4(c, models)}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0 + 1e-12);
    }
  }
}

TEST(Evaluate, TokenizesTexts) {
  const auto r = evaluate("Global warming, melting ice!", {"global warming melting ice", "Ice sheets."});
  EXPECT_DOUBLE_EQ(r.rouge1, 5.0 / 6.0);
  EXPECT_DOUBLE_EQ(r.rouge2, 3.0 / 4.0);
  EXPECT_GT(r.rougeW, 0.0);
  EXPECT_GT(r.rougeSU4, 0.0);
}

}  // namespace
}  // namespace usum
