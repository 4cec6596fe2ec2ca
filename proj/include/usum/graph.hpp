#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "usum/error.hpp"
#include "usum/textcore.hpp"

namespace usum {

inline constexpr double kDefaultAdjacencyThreshold = 0.001;

struct Edge {
  std::size_t i = 0;  // i < j
  std::size_t j = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  std::size_t index = 0;
  double weight = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Undirected similarity graph. An edge (i, j) exists iff
/// cosine_sim(s_i, s_j) > threshold (strict).
class SentenceGraph {
 public:
  SentenceGraph() = default;

  std::size_t node_count() const { return adjacency_.size(); }
  double threshold() const { return threshold_; }
  std::size_t edge_count() const { return edge_count_; }
  /// Number of sentence pairs whose similarity was computed while building.
  std::size_t pairs_examined() const { return pairs_examined_; }

  /// Neighbors of node i in ascending index order.
  const std::vector<Neighbor>& neighbors(std::size_t i) const {
    if (i >= adjacency_.size()) {
      throw std::out_of_range("node index " + std::to_string(i) + " out of range for graph of " +
                              std::to_string(adjacency_.size()) + " nodes");
    }
    return adjacency_[i];
  }

  /// All edges, ascending (i, j).
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (std::size_t i = 0; i < adjacency_.size(); ++i) {
      for (const auto& n : adjacency_[i]) {
        if (n.index > i) out.push_back({i, n.index, n.weight});
      }
    }
    return out;
  }

  friend SentenceGraph build_graph(std::span<const Sentence> sentences, double threshold);
  friend SentenceGraph graph_from_edges(std::size_t node_count, std::span<const Edge> edges, double threshold);

 private:
  std::vector<std::vector<Neighbor>> adjacency_;
  double threshold_ = kDefaultAdjacencyThreshold;
  std::size_t edge_count_ = 0;
  std::size_t pairs_examined_ = 0;
};

inline SentenceGraph build_graph(std::span<const Sentence> sentences,
                                 double threshold = kDefaultAdjacencyThreshold) {
  if (!(threshold >= 0.0)) throw PreconditionError("graph threshold must be >= 0");
  SentenceGraph g;
  g.threshold_ = threshold;
  g.adjacency_.assign(sentences.size(), {});
  // Row-major over i < j: node j receives its lower neighbors before its
  // higher ones, so every list comes out ascending.
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    for (std::size_t j = i + 1; j < sentences.size(); ++j) {
      ++g.pairs_examined_;
      const double w = cosine_sim(sentences[i], sentences[j]);
      if (w > threshold) {
        g.adjacency_[i].push_back({j, w});
        g.adjacency_[j].push_back({i, w});
        ++g.edge_count_;
      }
    }
  }
  return g;
}

/// A graph with the given edges and no similarity computation; weights must
/// already clear the threshold.
inline SentenceGraph graph_from_edges(std::size_t node_count, std::span<const Edge> edges,
                                      double threshold = kDefaultAdjacencyThreshold) {
  if (!(threshold >= 0.0)) throw PreconditionError("graph threshold must be >= 0");
  SentenceGraph g;
  g.threshold_ = threshold;
  g.adjacency_.assign(node_count, {});
  for (const auto& e : edges) {
    if (!(e.i < e.j && e.j < node_count)) {
      throw PreconditionError("edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) + ") invalid for " +
                              std::to_string(node_count) + " nodes");
    }
    if (!(e.weight > threshold)) throw PreconditionError("edge weight must exceed the threshold");
    for (const auto& n : g.adjacency_[e.i]) {
      if (n.index == e.j) throw PreconditionError("duplicate edge");
    }
    g.adjacency_[e.i].push_back({e.j, e.weight});
    g.adjacency_[e.j].push_back({e.i, e.weight});
    ++g.edge_count_;
  }
  for (auto& list : g.adjacency_) {
    std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.index < b.index; });
  }
  return g;
}

inline SentenceGraph build_graph(const Document& doc, double threshold = kDefaultAdjacencyThreshold) {
  return build_graph(std::span<const Sentence>(doc.sentences), threshold);
}

/// Tab-separated `i j weight` lines, ascending (i, j).
inline void write_edges(std::ostream& os, const SentenceGraph& g) {
  const auto old_precision = os.precision(17);
  for (const auto& e : g.edges()) os << e.i << '\t' << e.j << '\t' << e.weight << '\n';
  os.precision(old_precision);
}

}  // namespace usum
