#pragma once

// Query-biased sentence scores. For every query term q,
//
//   w_q(s) = d * f(s, q) + (1 - d) / a * sum_{v in adj(s)} sim(s, v) * f(v, q)
//
// where f(n, q) = 1/t when q occurs in n (t = number of query terms) and a is
// the number of graph neighbors of s that contain q. A sentence's base score
// is the sum of w_q(s) over the query. One pass; no iteration to a fixpoint.

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "usum/error.hpp"
#include "usum/graph.hpp"
#include "usum/textcore.hpp"

namespace usum {

struct ScoringConfig {
  double d = 0.85;
  double adjacency_threshold = kDefaultAdjacencyThreshold;

  void validate() const {
    if (!(d >= 0.0 && d <= 1.0)) throw ConfigError("scoring.d must lie in [0, 1]");
    if (!(adjacency_threshold >= 0.0)) throw ConfigError("scoring.adjacency_threshold must be >= 0");
  }
};

struct ScoreTable {
  /// base[s] == sum of per_term[s][k] over k, accumulated in query order.
  std::vector<double> base;
  /// per_term[s][k] is w_{q_k}(s).
  std::vector<std::vector<double>> per_term;

  std::size_t size() const { return base.size(); }
};

inline double indicator(const Sentence& n, std::string_view term, std::size_t t) {
  if (t == 0) throw PreconditionError("indicator: query must have at least one term");
  return n.contains(term) ? 1.0 / static_cast<double>(t) : 0.0;
}

inline double term_score(const std::vector<Sentence>& sentences, std::size_t s, std::string_view term,
                         std::size_t t, const SentenceGraph& g, const ScoringConfig& cfg) {
  double neighbor_sum = 0.0;
  std::size_t with_term = 0;
  for (const auto& [v, sim] : g.neighbors(s)) {
    const double f = indicator(sentences[v], term, t);
    if (f != 0.0) {
      ++with_term;
      neighbor_sum += sim * f;
    }
  }
  double w = cfg.d * indicator(sentences[s], term, t);
  if (with_term > 0) w += (1.0 - cfg.d) / static_cast<double>(with_term) * neighbor_sum;
  return w;
}

inline double node_score(const std::vector<Sentence>& sentences, std::size_t s, const Query& q,
                         const SentenceGraph& g, const ScoringConfig& cfg = {}) {
  double total = 0.0;
  for (const auto& term : q.terms) total += term_score(sentences, s, term, q.t(), g, cfg);
  return total;
}

inline double node_score(const Document& doc, std::size_t s, const Query& q, const SentenceGraph& g,
                         const ScoringConfig& cfg = {}) {
  return node_score(doc.sentences, s, q, g, cfg);
}

inline ScoreTable score_sentences(const Document& doc, const Query& q, const SentenceGraph& g,
                                  const ScoringConfig& cfg = {}) {
  cfg.validate();
  if (q.t() == 0) throw PreconditionError("score_sentences: empty query");
  if (g.node_count() != doc.size()) {
    throw PreconditionError("score_sentences: graph has " + std::to_string(g.node_count()) +
                            " nodes but the document has " + std::to_string(doc.size()) + " sentences");
  }
  ScoreTable table;
  table.base.assign(doc.size(), 0.0);
  table.per_term.assign(doc.size(), std::vector<double>(q.t(), 0.0));
  for (std::size_t s = 0; s < doc.size(); ++s) {
    double total = 0.0;
    for (std::size_t k = 0; k < q.t(); ++k) {
      const double w = term_score(doc.sentences, s, q.terms[k], q.t(), g, cfg);
      table.per_term[s][k] = w;
      total += w;
    }
    table.base[s] = total;
  }
  return table;
}

/// Tab-separated `sentence_index base_score` lines.
inline void write_scores(std::ostream& os, const ScoreTable& scores) {
  const auto old_precision = os.precision(17);
  for (std::size_t s = 0; s < scores.size(); ++s) os << s << '\t' << scores.base[s] << '\n';
  os.precision(old_precision);
}

}  // namespace usum
