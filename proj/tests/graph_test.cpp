#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>
#include <vector>

#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "support/random_text.hpp"
#include "usum/graph.hpp"

namespace usum {
namespace {

std::vector<std::vector<std::string>> token_lists(const Document& doc) {
  std::vector<std::vector<std::string>> out;
  for (const auto& s : doc.sentences) out.push_back(s.tokens);
  return out;
}

TEST(BuildGraph, SingleSentence) {
  const auto g = build_graph(make_document_from_sentences("d", {"ice melts"}));
  EXPECT_EQ(g.node_count(), 1u);
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_TRUE(g.neighbors(0).empty());
}

TEST(BuildGraph, EmptyDocument) {
  const auto g = build_graph(Document{});
  EXPECT_EQ(g.node_count(), 0u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(BuildGraph, IdenticalPairHasUnitWeight) {
  // Two unrelated sentences keep the shared terms' isf positive.
  const auto doc = make_document_from_sentences("d", {"ice melts fast", "ice melts fast", "sun", "rain"});
  const auto g = build_graph(doc);
  ASSERT_EQ(g.edge_count(), 1u);
  const auto edges = g.edges();
  EXPECT_EQ(edges[0].i, 0u);
  EXPECT_EQ(edges[0].j, 1u);
  EXPECT_NEAR(edges[0].weight, 1.0, 1e-12);
}

TEST(BuildGraph, EdgeSetMatchesBruteForce) {
  testing::TextGen gen(21, 12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto doc = gen.document("d", trial == 0 ? 5 : gen.uniform(2, 15));
    const auto toks = token_lists(doc);
    const auto g = build_graph(doc);
    std::vector<Edge> expected;
    for (std::size_t i = 0; i < doc.size(); ++i) {
      for (std::size_t j = i + 1; j < doc.size(); ++j) {
        const double w = testing::brute_cosine(toks, i, j);
        if (w > kDefaultAdjacencyThreshold) expected.push_back({i, j, w});
      }
    }
    const auto got = g.edges();
    ASSERT_EQ(got.size(), expected.size());
    for (std::size_t k = 0; k < got.size(); ++k) {
      EXPECT_EQ(got[k].i, expected[k].i);
      EXPECT_EQ(got[k].j, expected[k].j);
      EXPECT_NEAR(got[k].weight, expected[k].weight, 1e-12);
      EXPECT_EQ(got[k].weight, cosine_sim(doc.sentences[got[k].i], doc.sentences[got[k].j]));
      EXPECT_GT(got[k].weight, g.threshold());
    }
  }
}

TEST(BuildGraph, ThresholdIsStrict) {
  // Unrelated sentences have similarity exactly 0; threshold 0 must exclude them.
  const auto doc = make_document_from_sentences("d", {"ice", "sun", "rain"});
  EXPECT_EQ(build_graph(doc, 0.0).edge_count(), 0u);
  EXPECT_THROW(build_graph(doc, -1.0), PreconditionError);
}

TEST(BuildGraph, ExaminesEveryPairOnce) {
  testing::TextGen gen(4);
  for (std::size_t n : {0u, 1u, 2u, 7u, 40u}) {
    const auto g = build_graph(gen.document("d", n));
    EXPECT_EQ(g.pairs_examined(), n * (n > 0 ? n - 1 : 0) / 2);
  }
}

TEST(BuildGraph, UndirectedWithEqualWeights) {
  testing::TextGen gen(8, 10);
  const auto g = build_graph(gen.document("d", 25));
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    std::set<std::size_t> seen;
    for (const auto& [j, w] : g.neighbors(i)) {
      EXPECT_NE(i, j);
      EXPECT_TRUE(seen.insert(j).second);
      const auto& back = g.neighbors(j);
      const auto it = std::find_if(back.begin(), back.end(), [&](const Neighbor& n) { return n.index == i; });
      ASSERT_NE(it, back.end());
      EXPECT_EQ(it->weight, w);
    }
  }
}

TEST(BuildGraph, RaisingThresholdNeverAddsEdges) {
  testing::TextGen gen(9, 10);
  const auto doc = gen.document("d", 30);
  const double thresholds[] = {0.0, 0.001, 0.05, 0.2, 0.5, 0.9};
  std::set<std::pair<std::size_t, std::size_t>> previous;
  for (std::size_t k = 0; k < std::size(thresholds); ++k) {
    std::set<std::pair<std::size_t, std::size_t>> current;
    for (const auto& e : build_graph(doc, thresholds[k]).edges()) current.insert({e.i, e.j});
    if (k > 0) {
      EXPECT_TRUE(std::includes(previous.begin(), previous.end(), current.begin(), current.end()));
    }
    previous = std::move(current);
  }
}

TEST(Neighbors, IsolatedNode) {
  const auto doc = make_document_from_sentences("d", {"ice melts", "ice melts", "sun", "rain"});
  const auto g = build_graph(doc);
  EXPECT_TRUE(g.neighbors(2).empty());
  EXPECT_TRUE(g.neighbors(3).empty());
}

TEST(Neighbors, TriangleOfIdenticalSentences) {
  const auto doc = make_document_from_sentences("d", {"ice melts", "ice melts", "ice melts", "sun", "rain"});
  const auto g = build_graph(doc);
  const auto& n = g.neighbors(1);
  ASSERT_EQ(n.size(), 2u);
  EXPECT_EQ(n[0].index, 0u);
  EXPECT_EQ(n[1].index, 2u);
  EXPECT_NEAR(n[0].weight, 1.0, 1e-12);
  EXPECT_NEAR(n[1].weight, 1.0, 1e-12);
}

TEST(Neighbors, StarHub) {
  const auto doc = make_document_from_sentences(
      "d", {"hub alpha beta gamma", "alpha one", "beta two", "gamma three", "four", "five", "six", "seven"});
  const auto toks = token_lists(doc);
  const auto g = build_graph(doc);
  std::vector<std::size_t> brute;
  for (std::size_t j = 1; j < doc.size(); ++j) {
    if (testing::brute_cosine(toks, 0, j) > kDefaultAdjacencyThreshold) brute.push_back(j);
  }
  std::vector<std::size_t> got;
  for (const auto& n : g.neighbors(0)) got.push_back(n.index);
  EXPECT_EQ(got, (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(got, brute);
}

TEST(Neighbors, AscendingOrder) {
  testing::TextGen gen(10, 8);
  const auto g = build_graph(gen.document("d", 30));
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const auto& n = g.neighbors(i);
    EXPECT_TRUE(std::is_sorted(n.begin(), n.end(), [](const Neighbor& a, const Neighbor& b) {
      return a.index < b.index;
    }));
  }
}

TEST(Neighbors, OutOfRangeIsAnError) {
  const auto g = build_graph(make_document_from_sentences("d", {"a b", "c d"}));
  EXPECT_THROW(g.neighbors(2), std::out_of_range);
}

TEST(GraphFromEdges, SortsAdjacencyAndValidates) {
  const std::vector<Edge> edges = {{1, 3, 0.5}, {0, 3, 0.25}, {2, 3, 0.75}};
  const auto g = graph_from_edges(4, edges);
  EXPECT_EQ(g.edge_count(), 3u);
  const auto& n = g.neighbors(3);
  ASSERT_EQ(n.size(), 3u);
  EXPECT_EQ(n[0], (Neighbor{0, 0.25}));
  EXPECT_EQ(n[2], (Neighbor{2, 0.75}));

  const std::vector<Edge> self = {{1, 1, 0.5}};
  const std::vector<Edge> weak = {{0, 1, 0.001}};
  const std::vector<Edge> dup = {{0, 1, 0.5}, {0, 1, 0.6}};
  EXPECT_THROW(graph_from_edges(2, self), PreconditionError);
  EXPECT_THROW(graph_from_edges(2, weak), PreconditionError);
  EXPECT_THROW(graph_from_edges(2, dup), PreconditionError);
}

TEST(WriteEdges, TabSeparatedAscending) {
  const std::vector<Edge> edges = {{1, 2, 0.5}, {0, 2, 0.25}};
  std::ostringstream os;
  write_edges(os, graph_from_edges(3, edges));
  EXPECT_EQ(os.str(), "0\t2\t0.25\n1\t2\t0.5\n");
}

}  // namespace
}  // namespace usum
