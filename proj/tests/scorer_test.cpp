#include <algorithm>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "support/random_text.hpp"
#include "usum/scorer.hpp"

namespace usum {
namespace {

TEST(Indicator, PresentAndAbsent) {
  const auto doc = make_document_from_sentences("d", {"global warming effects"});
  EXPECT_DOUBLE_EQ(indicator(doc.sentences[0], "warming", 3), 1.0 / 3.0);
  EXPECT_EQ(indicator(doc.sentences[0], "warming", 1), 1.0);
  EXPECT_EQ(indicator(doc.sentences[0], "cooling", 3), 0.0);
  // Exact token match only.
  EXPECT_EQ(indicator(doc.sentences[0], "warm", 1), 0.0);
  EXPECT_THROW(indicator(doc.sentences[0], "warming", 0), PreconditionError);
}

TEST(NodeScore, IsolatedSentenceWithTheTerm) {
  const auto doc = make_document_from_sentences("d", {"ice melts", "sun shines", "rain"});
  const auto g = build_graph(doc);
  ASSERT_TRUE(g.neighbors(0).empty());
  EXPECT_DOUBLE_EQ(node_score(doc, 0, make_query("ice"), g), 0.85);
}

TEST(NodeScore, NoTermAnywhereNearby) {
  const auto doc = make_document_from_sentences("d", {"ice melts", "ice freezes", "sun shines", "rain"});
  const auto g = build_graph(doc);
  EXPECT_EQ(node_score(doc, 0, make_query("rain"), g), 0.0);
}

TEST(NodeScore, NeighborCarriesTheTerm) {
  const auto doc = make_document_from_sentences("d", {"ice melts", "rain falls"});
  const std::vector<Edge> edges = {{0, 1, 0.5}};
  const auto g = graph_from_edges(2, edges);
  EXPECT_NEAR(node_score(doc, 0, make_query("rain"), g), 0.075, 1e-15);
  // The sentence itself holds the term too: 0.85 + 0.15 * 0.5.
  EXPECT_NEAR(node_score(doc, 1, make_query("rain"), g), 0.85, 1e-15);
}

TEST(NodeScore, NeighborCountIsPerTerm) {
  // Node 0 has three neighbors; two hold "a", one holds "b".
  const auto doc = make_document_from_sentences("d", {"x", "a", "a b", "c"});
  const std::vector<Edge> edges = {{0, 1, 0.2}, {0, 2, 0.6}, {0, 3, 0.9}};
  const auto g = graph_from_edges(4, edges);
  const Query q = make_query("a b");
  const double a_part = 0.15 / 2.0 * (0.2 * 0.5 + 0.6 * 0.5);
  const double b_part = 0.15 / 1.0 * (0.6 * 0.5);
  EXPECT_NEAR(term_score(doc.sentences, 0, "a", 2, g, {}), a_part, 1e-15);
  EXPECT_NEAR(term_score(doc.sentences, 0, "b", 2, g, {}), b_part, 1e-15);
  EXPECT_NEAR(node_score(doc, 0, q, g), a_part + b_part, 1e-15);
}

TEST(ScoreSentences, BaseIsSumOfPerTerm) {
  testing::TextGen gen(41, 15);
  const auto doc = gen.document("d", 20);
  const auto q = gen.query(4);
  const auto table = score_sentences(doc, q, build_graph(doc));
  ASSERT_EQ(table.size(), doc.size());
  for (std::size_t s = 0; s < doc.size(); ++s) {
    double sum = 0.0;
    for (double w : table.per_term[s]) sum += w;
    EXPECT_EQ(table.base[s], sum);
    EXPECT_EQ(table.base[s], node_score(doc, s, q, build_graph(doc)));
  }
}

TEST(ScoreSentences, BoundedByOne) {
  testing::TextGen gen(42, 10);
  for (int trial = 0; trial < 100; ++trial) {
    const auto doc = gen.document("d", gen.uniform(1, 25), 1, 8);
    const auto q = gen.query(gen.uniform(1, 5));
    ScoringConfig cfg;
    cfg.d = gen.unit();
    const auto table = score_sentences(doc, q, build_graph(doc), cfg);
    for (double b : table.base) {
      EXPECT_GE(b, 0.0);
      EXPECT_LE(b, 1.0 + 1e-9);
    }
  }
}

TEST(ScoreSentences, NoOverlapMeansZero) {
  testing::TextGen gen(43, 10);
  const auto doc = gen.document("d", 15);
  const auto table = score_sentences(doc, make_query("unrelated words"), build_graph(doc));
  for (double b : table.base) EXPECT_EQ(b, 0.0);
}

TEST(ScoreSentences, ASecondPassChangesNothing) {
  testing::TextGen gen(44, 12);
  const auto doc = gen.document("d", 18);
  const auto q = gen.query(3);
  const auto g = build_graph(doc);
  const auto once = score_sentences(doc, q, g);
  const auto twice = score_sentences(doc, q, g);
  EXPECT_EQ(once.base, twice.base);
  EXPECT_EQ(once.per_term, twice.per_term);
}

TEST(ScoreSentences, IndependentOfEnumerationOrder) {
  testing::TextGen gen(45, 12);
  const auto doc = gen.document("d", 16);
  const auto q = gen.query(3);
  const auto table = score_sentences(doc, q, build_graph(doc));
  // Reversing the document reverses the scores.
  Document reversed = doc;
  std::reverse(reversed.sentences.begin(), reversed.sentences.end());
  rebuild_vectors(reversed);
  const auto rtable = score_sentences(reversed, q, build_graph(reversed));
  for (std::size_t s = 0; s < doc.size(); ++s) EXPECT_NEAR(table.base[s], rtable.base[doc.size() - 1 - s], 1e-12);
}

TEST(ScoreSentences, Preconditions) {
  const auto doc = make_document_from_sentences("d", {"a b", "c d"});
  const auto other = build_graph(make_document_from_sentences("d", {"a b"}));
  EXPECT_THROW(score_sentences(doc, make_query("a"), other), PreconditionError);
  ScoringConfig bad;
  bad.d = 1.5;
  EXPECT_THROW(score_sentences(doc, make_query("a"), build_graph(doc), bad), ConfigError);
  EXPECT_THROW(score_sentences(doc, Query{}, build_graph(doc)), PreconditionError);
}

}  // namespace
}  // namespace usum
