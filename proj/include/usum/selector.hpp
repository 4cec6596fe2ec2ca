#pragma once

// Greedy extraction of the updated summary from a scored embedded document.
//
// The top-scored sentence goes first. While some query term is uncovered (and
// there is room) the next pick is the sentence adding the most uncovered
// terms, ties going to the higher temporary score
//
//   temp(n) = kappa * lambda * base(n) - (1 - lambda) * max_{s in selected} sim(n, s)
//
// after which picks maximize temp alone. Base scores are never modified. The
// chosen sentences are returned in document order.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "usum/error.hpp"
#include "usum/scorer.hpp"
#include "usum/textcore.hpp"

namespace usum {

struct SelectionConfig {
  std::size_t summary_size = 12;
  double lambda = 0.7;
  double kappa = 20.0;

  void validate() const {
    if (summary_size < 1) throw ConfigError("selection.summary_size must be >= 1");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("selection.lambda must lie in [0, 1]");
    if (!(kappa > 0.0)) throw ConfigError("selection.kappa must be > 0");
  }
};

enum class SelectionPhase { kInitial, kCompleteness, kFill };

inline const char* to_string(SelectionPhase p) {
  switch (p) {
    case SelectionPhase::kInitial: return "initial";
    case SelectionPhase::kCompleteness: return "completeness";
    case SelectionPhase::kFill: return "fill";
  }
  return "?";
}

struct SelectionState {
  /// Selection order.
  std::vector<std::size_t> selected;
  /// covered[k] is true once query term k occurs in a selected sentence.
  std::vector<bool> covered;

  std::size_t count() const { return selected.size(); }
};

struct SelectionStep {
  std::size_t index = 0;
  SelectionPhase phase = SelectionPhase::kInitial;
  double base = 0.0;
  /// Absent for the first pick, which uses the base score.
  std::optional<double> temp;
  std::size_t new_terms = 0;
};

struct Selection {
  /// Selected sentence indices in document order.
  std::vector<std::size_t> indices;
  /// Every pick in the order it was made.
  std::vector<SelectionStep> steps;
};

inline double temp_score(const std::vector<Sentence>& sentences, std::size_t n_i, const SelectionState& state,
                         const ScoreTable& scores, const SelectionConfig& cfg) {
  if (state.selected.empty()) throw std::logic_error("temp_score called before any sentence was selected");
  double max_sim = -std::numeric_limits<double>::infinity();
  for (std::size_t j : state.selected) max_sim = std::max(max_sim, cosine_sim(sentences[n_i], sentences[j]));
  return cfg.kappa * cfg.lambda * scores.base[n_i] - (1.0 - cfg.lambda) * max_sim;
}

inline Selection select_summary(const Document& doc, const Query& q, const ScoreTable& scores,
                                const SelectionConfig& cfg) {
  cfg.validate();
  const std::size_t n = doc.size();
  if (n == 0) throw PreconditionError("select_summary: empty document");
  if (cfg.summary_size > n) {
    throw PreconditionError("select_summary: summary_size " + std::to_string(cfg.summary_size) +
                            " exceeds the " + std::to_string(n) + " available sentences");
  }
  if (scores.size() != n) throw PreconditionError("select_summary: score table does not match the document");

  const auto& sentences = doc.sentences;
  const std::size_t t = q.t();
  SelectionState state;
  state.covered.assign(t, false);
  std::vector<bool> taken(n, false);
  // Running max similarity to the selected set, so each pick costs O(n).
  std::vector<double> max_sim(n, -std::numeric_limits<double>::infinity());
  Selection out;

  auto uncovered_gain = [&](std::size_t i) {
    std::size_t gain = 0;
    for (std::size_t k = 0; k < t; ++k) {
      if (!state.covered[k] && sentences[i].contains(q.terms[k])) ++gain;
    }
    return gain;
  };
  auto temp = [&](std::size_t i) {
    return cfg.kappa * cfg.lambda * scores.base[i] - (1.0 - cfg.lambda) * max_sim[i];
  };
  auto take = [&](std::size_t i, SelectionPhase phase, std::optional<double> temp_value) {
    out.steps.push_back({i, phase, scores.base[i], temp_value, uncovered_gain(i)});
    taken[i] = true;
    state.selected.push_back(i);
    for (std::size_t k = 0; k < t; ++k) {
      if (sentences[i].contains(q.terms[k])) state.covered[k] = true;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!taken[j]) max_sim[j] = std::max(max_sim[j], cosine_sim(sentences[j], sentences[i]));
    }
  };
  auto all_covered = [&] {
    for (bool c : state.covered) {
      if (!c) return false;
    }
    return true;
  };

  std::size_t first = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (scores.base[i] > scores.base[first]) first = i;
  }
  take(first, SelectionPhase::kInitial, std::nullopt);

  while (!all_covered() && state.count() != cfg.summary_size) {
    std::optional<std::size_t> best;
    std::size_t best_gain = 0;
    double best_temp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      const std::size_t gain = uncovered_gain(i);
      const double tw = temp(i);
      if (!best || gain > best_gain || (gain == best_gain && tw > best_temp)) {
        best = i;
        best_gain = gain;
        best_temp = tw;
      }
    }
    take(*best, SelectionPhase::kCompleteness, best_temp);
  }

  while (state.count() != cfg.summary_size) {
    std::optional<std::size_t> best;
    double best_temp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      const double tw = temp(i);
      if (!best || tw > best_temp) {
        best = i;
        best_temp = tw;
      }
    }
    take(*best, SelectionPhase::kFill, best_temp);
  }

  out.indices = state.selected;
  std::sort(out.indices.begin(), out.indices.end());
  return out;
}

/// The selected sentences as a stand-alone summary, vectors rebuilt over it.
inline Document extract_summary(const Document& doc, const Selection& selection, std::string doc_id = "summary") {
  Document summary;
  summary.doc_id = std::move(doc_id);
  for (std::size_t i : selection.indices) summary.sentences.push_back(doc.sentences[i]);
  rebuild_vectors(summary);
  return summary;
}

/// Keeps the first `limit` whitespace-delimited words, one sentence per line.
/// The sentence holding the cut is kept up to the cut.
inline std::string truncate_words(const std::vector<std::string>& sentences, std::size_t limit) {
  std::string out;
  std::size_t words = 0;
  for (const auto& sentence : sentences) {
    if (words == limit) break;
    std::istringstream in(sentence);
    std::string word;
    std::string line;
    while (words < limit && in >> word) {
      if (!line.empty()) line.push_back(' ');
      line += word;
      ++words;
    }
    if (!line.empty()) {
      out += line;
      out.push_back('\n');
    }
  }
  return out;
}

inline std::string truncate_words(const Document& summary, std::size_t limit) {
  std::vector<std::string> raw;
  raw.reserve(summary.size());
  for (const auto& s : summary.sentences) raw.push_back(s.raw_text);
  return truncate_words(raw, limit);
}

}  // namespace usum
