#pragma once

// Weaves the sentences of the current summary into a newly arrived document.
//
// The smaller of the two inputs (by sentence count; ties count as "summary is
// not smaller") is inserted into the larger one. Calling the inserted
// sequence s_1..s_x and the receiving sequence the host:
//   1. s_x may land anywhere in the host,
//   2. s_1 only before s_x,
//   3. s_2..s_{x-1} in order, each strictly between s_{i-1} and s_x.
// Each placement finds the most similar host sentence y in the allowed range
// and goes next to it, on the side of whichever neighbor of y is closer to the
// inserted sentence. A sentence with zero similarity to the whole range is
// anchored to its placed predecessor, else to its (recursively placed)
// successor, else the remaining inserted sentences are appended.

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "usum/error.hpp"
#include "usum/textcore.hpp"

namespace usum {

enum class Origin { kSummary, kDocument };

inline const char* to_string(Origin o) { return o == Origin::kSummary ? "summary" : "document"; }

struct SentenceSource {
  Origin origin = Origin::kDocument;
  /// Index of the sentence in the summary or document it came from.
  std::size_t source_index = 0;

  friend bool operator==(const SentenceSource&, const SentenceSource&) = default;
};

enum class Placement {
  kBeforeBest,        // between y's predecessor and y
  kAfterBest,         // between y and y's successor
  kOnlySlot,          // the allowed range was empty; one legal slot remained
  kAfterPredecessor,  // zero similarity, anchored after s_{i-1}
  kBeforeSuccessor,   // zero similarity, anchored before s_{i+1}
  kAppended,          // zero similarity with no anchor; appended to the host
};

inline const char* to_string(Placement p) {
  switch (p) {
    case Placement::kBeforeBest: return "before-best";
    case Placement::kAfterBest: return "after-best";
    case Placement::kOnlySlot: return "only-slot";
    case Placement::kAfterPredecessor: return "after-predecessor";
    case Placement::kBeforeSuccessor: return "before-successor";
    case Placement::kAppended: return "appended";
  }
  return "?";
}

inline bool is_exception_path(Placement p) {
  return p == Placement::kAfterPredecessor || p == Placement::kBeforeSuccessor || p == Placement::kAppended;
}

/// One insertion, recorded when it happened. Positions are host positions
/// immediately after the insertion.
struct InsertionEvent {
  /// 0-based index within the inserted sequence (s_1 is 0).
  std::size_t sequence_index = 0;
  Origin origin = Origin::kSummary;
  Placement placement = Placement::kAfterBest;
  /// Host position of the most similar sentence y when the decision was made.
  std::optional<std::size_t> best_match;
  std::size_t position = 0;
  std::optional<std::size_t> predecessor_position;  // s_{i-1}
  std::optional<std::size_t> last_position;         // s_x, when it is not this sentence
};

struct EmbeddedDocument {
  /// Sentences in embedded order, vectors rebuilt over this document.
  Document document;
  /// Parallel to document.sentences.
  std::vector<SentenceSource> sources;
  /// True when the document was inserted into the summary rather than the
  /// other way round.
  bool swapped = false;
  std::vector<InsertionEvent> trace;

  std::size_t size() const { return document.size(); }
  const Sentence& sentence(std::size_t i) const { return document.sentences[i]; }
  Origin origin(std::size_t i) const { return sources[i].origin; }
};

struct InsertDecision {
  bool zero_similarity = false;
  std::size_t best_match = 0;
  double best_similarity = 0.0;
  std::size_t position = 0;
  Placement placement = Placement::kAfterBest;
};

/// Where s goes when only host positions [begin, end) may serve as y. Ties in
/// similarity pick the lowest position. A missing neighbor of y compares as
/// -infinity; with both missing, s goes after y.
inline InsertDecision insert_one(const Sentence& s, std::span<const Sentence* const> host, std::size_t begin,
                                 std::size_t end) {
  if (begin >= end || end > host.size()) {
    throw PreconditionError("insert_one: empty or out-of-range host interval [" + std::to_string(begin) + ", " +
                            std::to_string(end) + ") for host of " + std::to_string(host.size()));
  }
  InsertDecision d;
  d.best_match = begin;
  d.best_similarity = cosine_sim(s, *host[begin]);
  for (std::size_t p = begin + 1; p < end; ++p) {
    const double sim = cosine_sim(s, *host[p]);
    if (sim > d.best_similarity) {
      d.best_similarity = sim;
      d.best_match = p;
    }
  }
  if (d.best_similarity == 0.0) {
    d.zero_similarity = true;
    return d;
  }
  constexpr double kMissing = -std::numeric_limits<double>::infinity();
  const std::size_t y = d.best_match;
  const double before = y > 0 ? cosine_sim(s, *host[y - 1]) : kMissing;
  const double after = y + 1 < host.size() ? cosine_sim(s, *host[y + 1]) : kMissing;
  if (before > after) {
    d.position = y;
    d.placement = Placement::kBeforeBest;
  } else {
    d.position = y + 1;
    d.placement = Placement::kAfterBest;
  }
  return d;
}

namespace detail {

class Embedder {
 public:
  Embedder(const Document& summary, const Document& document) {
    swapped_ = summary.size() >= document.size();
    const Document& host = swapped_ ? summary : document;
    const Document& guest = swapped_ ? document : summary;
    host_origin_ = swapped_ ? Origin::kSummary : Origin::kDocument;
    guest_origin_ = swapped_ ? Origin::kDocument : Origin::kSummary;

    // Similarities during insertion use one tf*isf computation over the union
    // of both inputs, which is also the statistics of the final result.
    Document pool;
    pool.sentences.reserve(host.size() + guest.size());
    for (const auto& s : host.sentences) pool.sentences.push_back(s);
    for (const auto& s : guest.sentences) pool.sentences.push_back(s);
    rebuild_vectors(pool);
    pool_ = std::move(pool.sentences);
    term_stats_ = std::move(pool.term_stats);
    guest_offset_ = host.size();
    guest_count_ = guest.size();

    host_.reserve(pool_.size());
    for (std::size_t i = 0; i < guest_offset_; ++i) host_.push_back(&pool_[i]);
    placed_.assign(guest_count_, std::nullopt);
  }

  // host_ points into pool_.
  Embedder(const Embedder&) = delete;
  Embedder& operator=(const Embedder&) = delete;

  EmbeddedDocument run(std::string doc_id) {
    const std::size_t x = guest_count_;
    if (x > 0) {
      place(x - 1, 0, host_.size());
      if (x > 1) {
        if (!placed_[0]) place(0, 0, *placed_[x - 1]);
        for (std::size_t i = 1; i + 1 < x; ++i) {
          if (!placed_[i]) place(i, *placed_[i - 1] + 1, *placed_[x - 1]);
        }
      }
    }

    EmbeddedDocument out;
    out.swapped = swapped_;
    out.trace = std::move(trace_);
    out.document.doc_id = std::move(doc_id);
    out.document.sentences.reserve(host_.size());
    out.sources.reserve(host_.size());
    for (const Sentence* s : host_) {
      const auto pool_index = static_cast<std::size_t>(s - pool_.data());
      out.document.sentences.push_back(*s);
      out.document.sentences.back().id = out.document.sentences.size() - 1;
      if (pool_index < guest_offset_) {
        out.sources.push_back({host_origin_, pool_index});
      } else {
        out.sources.push_back({guest_origin_, pool_index - guest_offset_});
      }
    }
    // Same sentence set as the pool, so the pool's vectors already hold.
    out.document.term_stats = std::move(term_stats_);
    return out;
  }

 private:
  const Sentence& guest(std::size_t i) const { return pool_[guest_offset_ + i]; }

  void place(std::size_t i, std::size_t begin, std::size_t end) {
    if (begin == end) {
      insert_at(i, begin, Placement::kOnlySlot, std::nullopt);
      return;
    }
    const InsertDecision d = insert_one(guest(i), host_, begin, end);
    if (d.zero_similarity) {
      handle_exception(i, begin, end);
    } else {
      insert_at(i, d.position, d.placement, d.best_match);
    }
  }

  // s_i has zero similarity with every sentence it was allowed to sit next to.
  // [begin, end) is the range it was given; a successor placed on its behalf
  // gets the same range.
  void handle_exception(std::size_t i, std::size_t begin, std::size_t end) {
    if (i > 0 && placed_[i - 1]) {
      insert_at(i, *placed_[i - 1] + 1, Placement::kAfterPredecessor, std::nullopt);
      return;
    }
    if (i + 1 < guest_count_) {
      if (!placed_[i + 1]) place(i + 1, begin, end);
      if (placed_[i]) return;  // the successor fell through to the append fallback
      insert_at(i, *placed_[i + 1], Placement::kBeforeSuccessor, std::nullopt);
      return;
    }
    for (std::size_t k = 0; k < guest_count_; ++k) {
      if (!placed_[k]) insert_at(k, host_.size(), Placement::kAppended, std::nullopt);
    }
  }

  void insert_at(std::size_t i, std::size_t position, Placement how, std::optional<std::size_t> best) {
    host_.insert(host_.begin() + static_cast<std::ptrdiff_t>(position), &pool_[guest_offset_ + i]);
    for (auto& p : placed_) {
      if (p && *p >= position) ++*p;
    }
    placed_[i] = position;

    InsertionEvent e;
    e.sequence_index = i;
    e.origin = guest_origin_;
    e.placement = how;
    e.best_match = best;
    e.position = position;
    if (i > 0) e.predecessor_position = placed_[i - 1];
    if (i + 1 < guest_count_) e.last_position = placed_[guest_count_ - 1];
    trace_.push_back(e);
  }

  std::vector<Sentence> pool_;
  std::map<std::string, std::size_t, std::less<>> term_stats_;
  std::size_t guest_offset_ = 0;
  std::size_t guest_count_ = 0;
  std::vector<const Sentence*> host_;
  std::vector<std::optional<std::size_t>> placed_;
  std::vector<InsertionEvent> trace_;
  bool swapped_ = false;
  Origin host_origin_ = Origin::kDocument;
  Origin guest_origin_ = Origin::kSummary;
};

}  // namespace detail

inline EmbeddedDocument embed(const Document& current_summary, const Document& new_document) {
  detail::Embedder embedder(current_summary, new_document);
  return embedder.run(new_document.doc_id);
}

/// One line per insertion: origin, sequence index, y, side, final position.
inline void write_trace(std::ostream& os, const EmbeddedDocument& ed) {
  os << "# swapped=" << (ed.swapped ? "true" : "false") << '\n';
  for (const auto& e : ed.trace) {
    os << to_string(e.origin) << '\t' << e.sequence_index << '\t';
    if (e.best_match) {
      os << *e.best_match;
    } else {
      os << '-';
    }
    os << '\t' << to_string(e.placement) << '\t' << e.position << '\n';
  }
}

}  // namespace usum
