#pragma once

// Sentence segmentation, tokenization, tf*isf term vectors and cosine
// similarity. Everything downstream (graph, embedder, scorer, selector,
// bootstrap, rouge) consumes these types.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "usum/error.hpp"

namespace usum {

/// Sparse term -> weight map, kept sorted by term so that dot products are a
/// linear merge. The Euclidean norm is cached at construction.
class TermVector {
 public:
  using Entry = std::pair<std::string, double>;

  TermVector() = default;

  /// Entries may arrive in any order; duplicate terms are summed.
  explicit TermVector(std::vector<Entry> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    std::vector<Entry> merged;
    merged.reserve(entries_.size());
    for (auto& e : entries_) {
      if (!merged.empty() && merged.back().first == e.first) {
        merged.back().second += e.second;
      } else {
        merged.push_back(std::move(e));
      }
    }
    entries_ = std::move(merged);
    double sq = 0.0;
    for (const auto& e : entries_) sq += e.second * e.second;
    norm_ = std::sqrt(sq);
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  double norm() const { return norm_; }

  bool contains(std::string_view term) const { return find(term) != entries_.end(); }

  double weight(std::string_view term) const {
    auto it = find(term);
    return it == entries_.end() ? 0.0 : it->second;
  }

  double dot(const TermVector& other) const {
    double sum = 0.0;
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() && b != other.entries_.end()) {
      const int c = a->first.compare(b->first);
      if (c == 0) {
        sum += a->second * b->second;
        ++a;
        ++b;
      } else if (c < 0) {
        ++a;
      } else {
        ++b;
      }
    }
    return sum;
  }

  friend bool operator==(const TermVector&, const TermVector&) = default;

 private:
  std::vector<Entry>::const_iterator find(std::string_view term) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), term,
                               [](const Entry& e, std::string_view t) { return e.first < t; });
    if (it != entries_.end() && it->first == term) return it;
    return entries_.end();
  }

  std::vector<Entry> entries_;
  double norm_ = 0.0;
};

/// Cosine of two term vectors; 0 when either norm is 0. Range is [-1, 1]
/// because isf weights can be negative.
inline double cosine(const TermVector& a, const TermVector& b) {
  if (a.norm() == 0.0 || b.norm() == 0.0) return 0.0;
  return a.dot(b) / (a.norm() * b.norm());
}

struct Sentence {
  std::size_t id = 0;
  std::string raw_text;
  std::vector<std::string> tokens;
  /// tf*isf weights against the document the sentence was last built in.
  TermVector vector;

  bool contains(std::string_view term) const { return vector.contains(term); }
};

inline double cosine_sim(const Sentence& a, const Sentence& b) { return cosine(a.vector, b.vector); }

/// An ordered run of sentences. Also used for summaries and for the
/// sentence pool of an embedded document.
struct Document {
  std::string doc_id;
  std::vector<Sentence> sentences;
  /// term -> number of sentences containing it.
  std::map<std::string, std::size_t, std::less<>> term_stats;

  std::size_t size() const { return sentences.size(); }
  bool empty() const { return sentences.empty(); }
};

/// Distinct query terms in first-occurrence order.
struct Query {
  std::vector<std::string> terms;

  std::size_t t() const { return terms.size(); }
};

struct TextConfig {
  bool remove_stopwords = false;
  /// Used when remove_stopwords is set; empty means the built-in list.
  std::set<std::string, std::less<>> stopwords;
  /// Words (including the trailing period) after which a period never ends a
  /// sentence. Compared case-insensitively.
  std::vector<std::string> abbreviations;
  /// Bumped whenever the segmentation rules change.
  int segmenter_version = 1;
};

inline const std::vector<std::string>& default_abbreviations() {
  static const std::vector<std::string> list = {
      "dr.",  "mr.",  "mrs.", "ms.",  "prof.", "sr.",  "jr.",   "st.",  "mt.",  "gen.",
      "gov.", "sen.", "rep.", "rev.", "capt.", "col.", "lt.",   "sgt.", "u.s.", "u.k.",
      "u.n.", "e.g.", "i.e.", "etc.", "vs.",   "inc.", "ltd.",  "co.",  "corp.", "no.",
      "jan.", "feb.", "mar.", "apr.", "aug.",  "sep.", "sept.", "oct.", "nov.", "dec.",
      "fig.", "approx."};
  return list;
}

inline const std::set<std::string, std::less<>>& default_stopwords() {
  static const std::set<std::string, std::less<>> words = {
      "a",     "about", "above", "after", "again", "against", "all",   "am",    "an",    "and",
      "any",   "are",   "as",    "at",    "be",    "because", "been",  "before", "being", "below",
      "between", "both", "but",  "by",    "can",   "could",   "did",   "do",    "does",  "doing",
      "down",  "during", "each", "few",   "for",   "from",    "further", "had", "has",   "have",
      "having", "he",   "her",   "here",  "hers",  "herself", "him",   "himself", "his", "how",
      "i",     "if",    "in",    "into",  "is",    "it",      "its",   "itself", "just", "me",
      "more",  "most",  "my",    "myself", "no",   "nor",     "not",   "now",   "of",    "off",
      "on",    "once",  "only",  "or",    "other", "our",     "ours",  "ourselves", "out", "over",
      "own",   "same",  "she",   "should", "so",   "some",    "such",  "than",  "that",  "the",
      "their", "theirs", "them", "themselves", "then", "there", "these", "they", "this", "those",
      "through", "to",  "too",   "under", "until", "up",      "very",  "was",   "we",    "were",
      "what",  "when",  "where", "which", "while", "who",     "whom",  "why",   "will",  "with",
      "would", "you",   "your",  "yours", "yourself", "yourselves"};
  return words;
}

namespace detail {

inline bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

inline std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

/// Collapses whitespace runs to one space and trims both ends.
inline std::string squeeze_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_space(c)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

inline bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }
inline bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }
inline bool is_opener(char c) { return c == '"' || c == '\'' || c == '(' || c == '['; }

inline bool guarded_abbreviation(std::string_view text, std::size_t period_pos,
                                 const std::vector<std::string>& abbreviations) {
  std::size_t begin = period_pos;
  while (begin > 0 && !is_space(text[begin - 1])) --begin;
  while (begin < period_pos && is_opener(text[begin])) ++begin;
  const std::string word = to_lower_ascii(text.substr(begin, period_pos - begin + 1));
  const auto& list = abbreviations.empty() ? default_abbreviations() : abbreviations;
  return std::any_of(list.begin(), list.end(),
                     [&](const std::string& a) { return to_lower_ascii(a) == word; });
}

/// Decodes one UTF-8 code point starting at i. Malformed bytes decode to
/// U+FFFD and advance by one.
inline char32_t next_code_point(std::string_view s, std::size_t& i) {
  const auto lead = static_cast<unsigned char>(s[i]);
  int extra = 0;
  char32_t cp = 0;
  if (lead < 0x80) {
    ++i;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + extra >= s.size()) {
    ++i;
    return 0xFFFD;
  }
  for (int k = 1; k <= extra; ++k) {
    const auto cont = static_cast<unsigned char>(s[i + k]);
    if ((cont & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (cont & 0x3F);
  }
  i += extra + 1;
  return cp;
}

inline bool is_word_code_point(char32_t cp) {
  if (cp < 0x80) return std::isalnum(static_cast<int>(cp)) != 0;
  if (cp <= 0xBF) return false;  // Latin-1 controls, NBSP, symbols
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x206F) return false;  // general punctuation
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  if (cp == 0xFEFF || cp == 0xFFFD) return false;
  return true;
}

}  // namespace detail

/// Splits text at '.', '!' or '?' (optionally followed by closing quotes or
/// brackets) when whitespace or the end of text follows, unless the word ending
/// in that period is a guarded abbreviation. Fragments are whitespace-squeezed;
/// empty ones are dropped.
inline std::vector<std::string> segment(std::string_view text, const TextConfig& cfg = {}) {
  std::vector<std::string> out;
  auto flush = [&](std::size_t from, std::size_t to) {
    std::string s = detail::squeeze_whitespace(text.substr(from, to - from));
    if (!s.empty()) out.push_back(std::move(s));
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!detail::is_terminator(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && detail::is_terminator(text[j])) ++j;
    const bool single_period = (j == i + 1 && text[i] == '.');
    while (j < text.size() && detail::is_closer(text[j])) ++j;
    if (j < text.size() && !detail::is_space(text[j])) {
      i = j;
      continue;
    }
    if (single_period && detail::guarded_abbreviation(text, i, cfg.abbreviations)) {
      i = j;
      continue;
    }
    flush(start, j);
    start = j;
    i = j;
  }
  if (start < text.size()) flush(start, text.size());
  return out;
}

/// Lowercased maximal runs of alphanumeric characters. Non-ASCII letters are
/// kept inside tokens; Unicode punctuation separates them.
inline std::vector<std::string> tokenize(std::string_view sentence_text, const TextConfig& cfg = {}) {
  std::vector<std::string> tokens;
  std::string current;
  auto finish = [&] {
    if (current.empty()) return;
    if (cfg.remove_stopwords) {
      const auto& stop = cfg.stopwords.empty() ? default_stopwords() : cfg.stopwords;
      if (stop.contains(current)) {
        current.clear();
        return;
      }
    }
    tokens.push_back(std::move(current));
    current.clear();
  };

  std::size_t i = 0;
  while (i < sentence_text.size()) {
    const std::size_t begin = i;
    const char32_t cp = detail::next_code_point(sentence_text, i);
    if (detail::is_word_code_point(cp)) {
      if (cp < 0x80) {
        current.push_back(static_cast<char>(std::tolower(static_cast<int>(cp))));
      } else {
        current.append(sentence_text.substr(begin, i - begin));
      }
    } else {
      finish();
    }
  }
  finish();
  return tokens;
}

/// Inverse sentential frequency, natural log. Negative when n_t + 1 > N.
inline double isf(std::size_t sentence_count, std::size_t containing) {
  return std::log(static_cast<double>(sentence_count) / static_cast<double>(containing + 1));
}

/// Recomputes ids, term_stats and every sentence vector over the document's
/// own sentences.
inline void rebuild_vectors(Document& doc) {
  doc.term_stats.clear();
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    Sentence& s = doc.sentences[i];
    s.id = i;
    std::set<std::string_view> seen(s.tokens.begin(), s.tokens.end());
    for (std::string_view term : seen) ++doc.term_stats[std::string(term)];
  }
  const std::size_t n = doc.sentences.size();
  for (Sentence& s : doc.sentences) {
    std::map<std::string_view, std::size_t> tf;
    for (const auto& tok : s.tokens) ++tf[tok];
    std::vector<TermVector::Entry> entries;
    entries.reserve(tf.size());
    for (const auto& [term, count] : tf) {
      const std::size_t n_t = doc.term_stats.find(term)->second;
      entries.emplace_back(std::string(term), static_cast<double>(count) * isf(n, n_t));
    }
    s.vector = TermVector(std::move(entries));
  }
}

inline Document build_vectors(Document doc) {
  rebuild_vectors(doc);
  return doc;
}

/// One sentence per entry of raw_sentences. Sentences that tokenize to
/// nothing are dropped.
inline Document make_document_from_sentences(std::string doc_id,
                                             const std::vector<std::string>& raw_sentences,
                                             const TextConfig& cfg = {}) {
  Document doc;
  doc.doc_id = std::move(doc_id);
  for (const auto& raw : raw_sentences) {
    Sentence s;
    s.raw_text = detail::squeeze_whitespace(raw);
    s.tokens = tokenize(s.raw_text, cfg);
    if (s.tokens.empty()) continue;
    doc.sentences.push_back(std::move(s));
  }
  rebuild_vectors(doc);
  return doc;
}

inline Document make_document(std::string doc_id, std::string_view text, const TextConfig& cfg = {}) {
  return make_document_from_sentences(std::move(doc_id), segment(text, cfg), cfg);
}

inline Query make_query(std::string_view text, const TextConfig& cfg = {}) {
  Query q;
  for (auto& tok : tokenize(text, cfg)) {
    if (std::find(q.terms.begin(), q.terms.end(), tok) == q.terms.end()) q.terms.push_back(std::move(tok));
  }
  if (q.terms.empty()) throw PreconditionError("query has no terms after tokenization");
  return q;
}

}  // namespace usum
