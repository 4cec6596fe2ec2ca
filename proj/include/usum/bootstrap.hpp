#pragma once

// Initial summary for the first documents of a cluster: a small centroid
// summarizer. Each sentence scores
//
//   w_centroid * cos(s, centroid) + w_position / (1 + position) + w_query * cos(s, query)
//
// and sentences are taken best-first, skipping any whose cosine with an
// already-taken sentence reaches mmr_sim_threshold. The result is ordered by
// source document, then position.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "usum/error.hpp"
#include "usum/textcore.hpp"

namespace usum {

struct BootstrapConfig {
  double w_centroid = 1.0;
  double w_position = 1.0;
  double w_query = 10.0;
  double mmr_sim_threshold = 0.6;
  std::size_t summary_sentences = 12;

  void validate() const {
    if (!(w_centroid >= 0.0 && w_position >= 0.0 && w_query >= 0.0)) {
      throw ConfigError("bootstrap weights must be >= 0");
    }
    if (!(mmr_sim_threshold >= 0.0 && mmr_sim_threshold <= 1.0)) {
      throw ConfigError("bootstrap.mmr_sim_threshold must lie in [0, 1]");
    }
  }
};

/// Mean of every sentence vector in the cluster, each built against its own
/// document.
inline TermVector centroid_vector(const std::vector<Document>& docs) {
  if (docs.empty()) throw PreconditionError("centroid_vector: empty cluster");
  std::map<std::string, double, std::less<>> sum;
  std::size_t count = 0;
  for (const auto& doc : docs) {
    for (const auto& s : doc.sentences) {
      for (const auto& [term, w] : s.vector.entries()) sum[term] += w;
      ++count;
    }
  }
  if (count == 0) throw PreconditionError("centroid_vector: cluster has no sentences");
  std::vector<TermVector::Entry> entries;
  entries.reserve(sum.size());
  for (const auto& [term, w] : sum) entries.emplace_back(term, w / static_cast<double>(count));
  return TermVector(std::move(entries));
}

struct BootstrapCandidate {
  std::size_t doc = 0;
  std::size_t position = 0;
  double score = 0.0;
};

namespace detail {

/// tf*isf vectors for every sentence with isf taken over the whole cluster,
/// plus the query vector in the same space.
struct ClusterSpace {
  std::vector<std::vector<TermVector>> sentence_vectors;
  TermVector query_vector;
};

inline ClusterSpace cluster_space(const std::vector<Document>& docs, const Query& q) {
  std::size_t total = 0;
  std::map<std::string, std::size_t, std::less<>> containing;
  for (const auto& doc : docs) {
    for (const auto& s : doc.sentences) {
      ++total;
      for (const auto& [term, w] : s.vector.entries()) ++containing[term];
    }
  }
  auto isf_of = [&](std::string_view term) {
    auto it = containing.find(term);
    return isf(total, it == containing.end() ? 0 : it->second);
  };

  ClusterSpace space;
  for (const auto& doc : docs) {
    auto& row = space.sentence_vectors.emplace_back();
    for (const auto& s : doc.sentences) {
      std::map<std::string_view, std::size_t> tf;
      for (const auto& tok : s.tokens) ++tf[tok];
      std::vector<TermVector::Entry> entries;
      for (const auto& [term, c] : tf) entries.emplace_back(std::string(term), static_cast<double>(c) * isf_of(term));
      row.emplace_back(std::move(entries));
    }
  }
  std::vector<TermVector::Entry> qentries;
  for (const auto& term : q.terms) qentries.emplace_back(term, isf_of(term));
  space.query_vector = TermVector(std::move(qentries));
  return space;
}

}  // namespace detail

inline std::vector<BootstrapCandidate> bootstrap_scores(const std::vector<Document>& docs, const Query& q,
                                                        const BootstrapConfig& cfg = {}) {
  const TermVector centroid = centroid_vector(docs);
  const auto space = detail::cluster_space(docs, q);
  std::vector<BootstrapCandidate> out;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (std::size_t p = 0; p < docs[d].size(); ++p) {
      const double score = cfg.w_centroid * cosine(docs[d].sentences[p].vector, centroid) +
                           cfg.w_position / (1.0 + static_cast<double>(p)) +
                           cfg.w_query * cosine(space.sentence_vectors[d][p], space.query_vector);
      out.push_back({d, p, score});
    }
  }
  return out;
}

inline Document bootstrap_summary(const std::vector<Document>& docs, const Query& q,
                                  const BootstrapConfig& cfg = {}) {
  cfg.validate();
  auto candidates = bootstrap_scores(docs, q, cfg);
  if (candidates.empty()) throw PreconditionError("bootstrap_summary: cluster has no sentences");
  const auto space = detail::cluster_space(docs, q);

  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const BootstrapCandidate& a, const BootstrapCandidate& b) { return a.score > b.score; });
  std::vector<BootstrapCandidate> chosen;
  for (const auto& c : candidates) {
    if (chosen.size() == cfg.summary_sentences) break;
    const auto& vec = space.sentence_vectors[c.doc][c.position];
    const auto& tokens = docs[c.doc].sentences[c.position].tokens;
    const bool redundant = std::any_of(chosen.begin(), chosen.end(), [&](const BootstrapCandidate& o) {
      // Token-identical sentences count as redundant even when their vectors
      // have zero norm.
      return cosine(vec, space.sentence_vectors[o.doc][o.position]) >= cfg.mmr_sim_threshold ||
             tokens == docs[o.doc].sentences[o.position].tokens;
    });
    if (!redundant) chosen.push_back(c);
  }
  std::sort(chosen.begin(), chosen.end(), [](const BootstrapCandidate& a, const BootstrapCandidate& b) {
    return a.doc != b.doc ? a.doc < b.doc : a.position < b.position;
  });

  Document summary;
  summary.doc_id = "bootstrap";
  for (const auto& c : chosen) summary.sentences.push_back(docs[c.doc].sentences[c.position]);
  rebuild_vectors(summary);
  return summary;
}

}  // namespace usum
