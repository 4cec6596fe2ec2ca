#pragma once

// Recall-oriented overlap measures. Every measure aggregates over model
// summaries as (sum of per-model matches) / (sum of per-model totals), with
// matches clipped per model: count_match(g) = min(count_candidate(g), count_model(g)).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "usum/error.hpp"
#include "usum/textcore.hpp"

namespace usum {

using Tokens = std::vector<std::string>;

inline constexpr double kDefaultWlcsExponent = 1.2;
/// Skip-bigrams may have at most this many tokens between their members.
inline constexpr std::size_t kSu4MaxGap = 4;

/// Numerator and denominator of one measure, kept apart so callers can reason
/// about them separately.
struct RougeRatio {
  double matched = 0.0;
  double total = 0.0;

  double value() const { return matched / total; }
};

struct RougeReport {
  double rouge1 = 0.0;
  double rouge2 = 0.0;
  double rougeW = 0.0;
  double rougeSU4 = 0.0;
};

namespace detail {

using UnitCounts = std::map<std::string, std::size_t, std::less<>>;

// Token text never contains U+001F, so joined keys cannot collide.
inline std::string join_unit(std::string_view a, std::string_view b) {
  std::string key;
  key.reserve(a.size() + b.size() + 1);
  key.append(a);
  key.push_back('\x1f');
  key.append(b);
  return key;
}

inline UnitCounts ngram_counts(const Tokens& tokens, std::size_t n) {
  UnitCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (std::size_t k = 1; k < n; ++k) key = join_unit(key, tokens[i + k]);
    ++counts[key];
  }
  return counts;
}

inline UnitCounts su4_counts(const Tokens& tokens) {
  UnitCounts counts;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    ++counts[tokens[i]];
    const std::size_t last = std::min(tokens.size(), i + kSu4MaxGap + 2);
    for (std::size_t j = i + 1; j < last; ++j) ++counts[join_unit(tokens[i], tokens[j])];
  }
  return counts;
}

inline std::size_t clipped_matches(const UnitCounts& candidate, const UnitCounts& model) {
  std::size_t matched = 0;
  for (const auto& [unit, count] : model) {
    auto it = candidate.find(unit);
    if (it != candidate.end()) matched += std::min(count, it->second);
  }
  return matched;
}

inline std::size_t total_units(const UnitCounts& counts) {
  std::size_t total = 0;
  for (const auto& [unit, count] : counts) total += count;
  return total;
}

inline void require_models(const std::vector<Tokens>& models, const char* what) {
  if (models.empty()) throw PreconditionError(std::string(what) + ": no model summaries");
}

inline void require_total(const RougeRatio& r, const char* what) {
  if (r.total == 0.0) throw PreconditionError(std::string(what) + ": every model summary is empty");
}

}  // namespace detail

inline RougeRatio rouge_n_ratio(const Tokens& candidate, const std::vector<Tokens>& models, std::size_t n) {
  if (n < 1) throw PreconditionError("rouge_n: n must be >= 1");
  detail::require_models(models, "rouge_n");
  const auto cand = detail::ngram_counts(candidate, n);
  RougeRatio r;
  for (const auto& model : models) {
    const auto counts = detail::ngram_counts(model, n);
    r.matched += static_cast<double>(detail::clipped_matches(cand, counts));
    r.total += static_cast<double>(detail::total_units(counts));
  }
  detail::require_total(r, "rouge_n");
  return r;
}

inline double rouge_n(const Tokens& candidate, const std::vector<Tokens>& models, std::size_t n) {
  return rouge_n_ratio(candidate, models, n).value();
}

inline RougeRatio rouge_su4_ratio(const Tokens& candidate, const std::vector<Tokens>& models) {
  detail::require_models(models, "rouge_su4");
  const auto cand = detail::su4_counts(candidate);
  RougeRatio r;
  for (const auto& model : models) {
    const auto counts = detail::su4_counts(model);
    r.matched += static_cast<double>(detail::clipped_matches(cand, counts));
    r.total += static_cast<double>(detail::total_units(counts));
  }
  detail::require_total(r, "rouge_su4");
  return r;
}

inline double rouge_su4(const Tokens& candidate, const std::vector<Tokens>& models) {
  return rouge_su4_ratio(candidate, models).value();
}

/// Best total weight over common subsequences of a and b, where every maximal
/// run of k matches that are consecutive in both sequences weighs k^exponent.
///
/// best[i][j] covers prefixes a[0, i) and b[0, j). A subsequence either skips
/// a[i-1] or b[j-1], or ends with a diagonal run of length k <= run[i][j]
/// preceded by anything in best[i-k][j-k]. Splitting one run into two never
/// scores higher for exponent >= 1, so the maximum is exact.
inline double weighted_lcs(const Tokens& a, const Tokens& b, double exponent) {
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  std::vector<double> best((m + 1) * (n + 1), 0.0);
  std::vector<std::size_t> run((m + 1) * (n + 1), 0);
  auto at = [n](std::size_t i, std::size_t j) { return i * (n + 1) + j; };
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      double v = std::max(best[at(i - 1, j)], best[at(i, j - 1)]);
      if (a[i - 1] == b[j - 1]) {
        const std::size_t r = run[at(i - 1, j - 1)] + 1;
        run[at(i, j)] = r;
        for (std::size_t k = 1; k <= r; ++k) {
          v = std::max(v, best[at(i - k, j - k)] + std::pow(static_cast<double>(k), exponent));
        }
      }
      best[at(i, j)] = v;
    }
  }
  return best[at(m, n)];
}

inline RougeRatio rouge_w_ratio(const Tokens& candidate, const std::vector<Tokens>& models,
                                double weight_exponent = kDefaultWlcsExponent) {
  if (!(weight_exponent >= 1.0)) throw PreconditionError("rouge_w: weight exponent must be >= 1");
  detail::require_models(models, "rouge_w");
  RougeRatio r;
  for (const auto& model : models) {
    if (model.empty()) continue;
    const double wlcs = weighted_lcs(candidate, model, weight_exponent);
    r.matched += std::pow(wlcs, 1.0 / weight_exponent);
    r.total += static_cast<double>(model.size());
  }
  detail::require_total(r, "rouge_w");
  return r;
}

inline double rouge_w(const Tokens& candidate, const std::vector<Tokens>& models,
                      double weight_exponent = kDefaultWlcsExponent) {
  return rouge_w_ratio(candidate, models, weight_exponent).value();
}

/// Tokenizes candidate and models with the shared tokenizer (no stop-word
/// removal) and computes all four measures.
inline RougeReport evaluate(std::string_view candidate_text, const std::vector<std::string>& model_texts,
                            double weight_exponent = kDefaultWlcsExponent) {
  const TextConfig plain;
  const Tokens candidate = tokenize(candidate_text, plain);
  std::vector<Tokens> models;
  models.reserve(model_texts.size());
  for (const auto& text : model_texts) models.push_back(tokenize(text, plain));
  RougeReport report;
  report.rouge1 = rouge_n(candidate, models, 1);
  report.rouge2 = rouge_n(candidate, models, 2);
  report.rougeW = rouge_w(candidate, models, weight_exponent);
  report.rougeSU4 = rouge_su4(candidate, models);
  return report;
}

}  // namespace usum
