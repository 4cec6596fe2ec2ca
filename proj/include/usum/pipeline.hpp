#pragma once

// Orchestration: one update step (embed, graph, score, select) and the full
// cluster protocol (bootstrap on the first documents, then fold in the rest
// one at a time, each step reading back the summary file the previous step
// wrote).

#include <charconv>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "usum/bootstrap.hpp"
#include "usum/embedder.hpp"
#include "usum/error.hpp"
#include "usum/graph.hpp"
#include "usum/io.hpp"
#include "usum/rouge.hpp"
#include "usum/scorer.hpp"
#include "usum/selector.hpp"
#include "usum/textcore.hpp"

namespace usum {

struct RunConfig {
  fs::path corpus_dir;
  fs::path query_file;
  std::optional<fs::path> model_dir;
  fs::path out_dir = "usum-run";
  std::size_t bootstrap_docs = 15;
  std::size_t total_docs = 25;
  std::size_t word_limit = 250;
  TextConfig text;
  std::optional<fs::path> stopword_file;
  ScoringConfig scoring;
  SelectionConfig selection;
  BootstrapConfig bootstrap;
  double wlcs_exponent = kDefaultWlcsExponent;

  void validate() const {
    if (bootstrap_docs < 1) throw ConfigError("run.bootstrap_docs must be >= 1");
    if (bootstrap_docs >= total_docs) throw ConfigError("run.bootstrap_docs must be < run.total_docs");
    if (!(wlcs_exponent >= 1.0)) throw ConfigError("rouge.weight_exponent must be >= 1");
    scoring.validate();
    selection.validate();
    bootstrap.validate();
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

inline double parse_double(const std::string& key, const std::string& value) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + value + "'");
  }
  return v;
}

inline std::size_t parse_size(const std::string& key, const std::string& value) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("config key '" + key + "': expected a non-negative integer, got '" + value + "'");
  }
  return v;
}

inline bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError("config key '" + key + "': expected true or false, got '" + value + "'");
}

}  // namespace detail

/// Sets one dotted key. Throws ConfigError on unknown keys or bad values.
inline void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  using detail::parse_bool;
  using detail::parse_double;
  using detail::parse_size;
  static const std::map<std::string, std::function<void(RunConfig&, const std::string&, const std::string&)>>
      setters = {
          {"run.corpus_dir", [](RunConfig& c, auto&, auto& v) { c.corpus_dir = v; }},
          {"run.query_file", [](RunConfig& c, auto&, auto& v) { c.query_file = v; }},
          {"run.model_dir", [](RunConfig& c, auto&, auto& v) { c.model_dir = fs::path(v); }},
          {"run.out_dir", [](RunConfig& c, auto&, auto& v) { c.out_dir = v; }},
          {"run.bootstrap_docs", [](RunConfig& c, auto& k, auto& v) { c.bootstrap_docs = parse_size(k, v); }},
          {"run.total_docs", [](RunConfig& c, auto& k, auto& v) { c.total_docs = parse_size(k, v); }},
          {"run.word_limit", [](RunConfig& c, auto& k, auto& v) { c.word_limit = parse_size(k, v); }},
          {"text.remove_stopwords", [](RunConfig& c, auto& k, auto& v) { c.text.remove_stopwords = parse_bool(k, v); }},
          {"text.stopword_file", [](RunConfig& c, auto&, auto& v) { c.stopword_file = fs::path(v); }},
          {"scoring.d", [](RunConfig& c, auto& k, auto& v) { c.scoring.d = parse_double(k, v); }},
          {"scoring.adjacency_threshold",
           [](RunConfig& c, auto& k, auto& v) { c.scoring.adjacency_threshold = parse_double(k, v); }},
          {"selection.summary_size", [](RunConfig& c, auto& k, auto& v) { c.selection.summary_size = parse_size(k, v); }},
          {"selection.lambda", [](RunConfig& c, auto& k, auto& v) { c.selection.lambda = parse_double(k, v); }},
          {"selection.kappa", [](RunConfig& c, auto& k, auto& v) { c.selection.kappa = parse_double(k, v); }},
          {"bootstrap.w_centroid", [](RunConfig& c, auto& k, auto& v) { c.bootstrap.w_centroid = parse_double(k, v); }},
          {"bootstrap.w_position", [](RunConfig& c, auto& k, auto& v) { c.bootstrap.w_position = parse_double(k, v); }},
          {"bootstrap.w_query", [](RunConfig& c, auto& k, auto& v) { c.bootstrap.w_query = parse_double(k, v); }},
          {"bootstrap.mmr_sim_threshold",
           [](RunConfig& c, auto& k, auto& v) { c.bootstrap.mmr_sim_threshold = parse_double(k, v); }},
          {"bootstrap.summary_sentences",
           [](RunConfig& c, auto& k, auto& v) { c.bootstrap.summary_sentences = parse_size(k, v); }},
          {"rouge.weight_exponent", [](RunConfig& c, auto& k, auto& v) { c.wlcs_exponent = parse_double(k, v); }},
      };
  auto it = setters.find(key);
  if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
  it->second(cfg, key, value);
}

/// Flat `key = value` lines; blank lines and lines starting with '#' are
/// ignored.
inline void apply_config_text(RunConfig& cfg, std::string_view text, const std::string& origin = "config") {
  std::size_t line_no = 0;
  for (const auto& raw : split_lines(text)) {
    ++line_no;
    const std::string line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    try {
      set_config_value(cfg, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

inline void apply_config_file(RunConfig& cfg, const fs::path& path) {
  apply_config_text(cfg, read_text_file(path), path.string());
}

/// Loads the stop-word file, if one is configured, into cfg.text.
inline void resolve_text_config(RunConfig& cfg) {
  if (cfg.stopword_file) {
    const auto words = read_stopword_file(*cfg.stopword_file);
    cfg.text.stopwords = {words.begin(), words.end()};
  }
}

struct UpdateResult {
  std::size_t summary_sentences = 0;
  std::size_t document_sentences = 0;
  EmbeddedDocument embedded;
  SentenceGraph graph;
  ScoreTable scores;
  Selection selection;
  Document summary;
  std::chrono::duration<double> elapsed{};
};

/// One incremental step. Only the previous summary and the new document are
/// consulted. The summary size is capped at the embedded document's size.
inline UpdateResult update_summary(const Document& current_summary, const Document& new_document, const Query& q,
                                   const ScoringConfig& scoring = {}, const SelectionConfig& selection = {}) {
  const auto start = std::chrono::steady_clock::now();
  UpdateResult r;
  r.summary_sentences = current_summary.size();
  r.document_sentences = new_document.size();
  r.embedded = embed(current_summary, new_document);
  if (r.embedded.size() == 0) throw PreconditionError("update: both the summary and the document are empty");
  r.graph = build_graph(r.embedded.document, scoring.adjacency_threshold);
  r.scores = score_sentences(r.embedded.document, q, r.graph, scoring);
  SelectionConfig capped = selection;
  capped.summary_size = std::min(selection.summary_size, r.embedded.size());
  r.selection = select_summary(r.embedded.document, q, r.scores, capped);
  r.summary = extract_summary(r.embedded.document, r.selection, "summary");
  r.elapsed = std::chrono::steady_clock::now() - start;
  return r;
}

/// Sidecar describing how an updated summary was chosen.
inline std::string format_update_metadata(const UpdateResult& r, const std::string& document_id,
                                          int segmenter_version = 1) {
  KeyValueWriter kv;
  kv.add("format", "usum-update/1")
      .add("segmenter_version", std::to_string(segmenter_version))
      .add("document", document_id)
      .add("summary_sentences", r.summary_sentences)
      .add("document_sentences", r.document_sentences)
      .add("embedded_sentences", r.embedded.size())
      .add("swapped", r.embedded.swapped)
      .add("selected", r.selection.steps.size());
  for (std::size_t k = 0; k < r.selection.steps.size(); ++k) {
    const auto& step = r.selection.steps[k];
    const std::string p = "pick." + std::to_string(k + 1) + ".";
    kv.add(p + "index", step.index)
        .add(p + "phase", to_string(step.phase))
        .add(p + "origin", to_string(r.embedded.origin(step.index)))
        .add(p + "source_index", r.embedded.sources[step.index].source_index)
        .add(p + "new_terms", step.new_terms)
        .add(p + "base", step.base)
        .add(p + "temp", step.temp ? format_double(*step.temp) : std::string("-"));
  }
  return kv.str();
}

struct UpdateRecord {
  std::size_t update_index = 0;
  std::string document_id;
  std::size_t summary_sentences = 0;
  std::size_t document_sentences = 0;
  std::size_t embedded_sentences = 0;
  std::chrono::duration<double> elapsed{};
  fs::path summary_path;
  std::optional<RougeReport> rouge;
};

struct RunReport {
  fs::path bootstrap_path;
  std::optional<RougeReport> bootstrap_rouge;
  std::vector<UpdateRecord> updates;
};

/// Machine-readable report. Wall-clock durations are left out so that the file
/// is identical across runs; they go to timings.tsv instead.
inline nlohmann::ordered_json report_to_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["bootstrap_summary"] = report.bootstrap_path.filename().string();
  if (report.bootstrap_rouge) j["bootstrap_rouge"] = rouge_to_json(*report.bootstrap_rouge);
  j["updates"] = nlohmann::ordered_json::array();
  for (const auto& u : report.updates) {
    nlohmann::ordered_json e;
    e["update"] = u.update_index;
    e["document"] = u.document_id;
    e["summary_sentences"] = u.summary_sentences;
    e["document_sentences"] = u.document_sentences;
    e["embedded_sentences"] = u.embedded_sentences;
    e["summary"] = u.summary_path.filename().string();
    if (u.rouge) e["rouge"] = rouge_to_json(*u.rouge);
    j["updates"].push_back(std::move(e));
  }
  return j;
}

inline std::string format_timings(const RunReport& report) {
  std::string out = "update\tdocument\tseconds\n";
  for (const auto& u : report.updates) {
    out += std::to_string(u.update_index) + '\t' + u.document_id + '\t' + format_double(u.elapsed.count()) + '\n';
  }
  return out;
}

inline std::string update_stem(std::size_t index) {
  std::string n = std::to_string(index);
  if (n.size() < 2) n.insert(0, 2 - n.size(), '0');
  return "update_" + n;
}

/// Runs the whole protocol and writes, under cfg.out_dir:
///   bootstrap.summary.txt / .truncated.txt [/ .rouge.txt]
///   update_NN.summary.txt / .truncated.txt / .meta.txt [/ .rouge.txt]
///   run_report.json, timings.tsv
inline RunReport run_cluster(RunConfig cfg) {
  cfg.validate();
  resolve_text_config(cfg);
  const auto files = list_files(cfg.corpus_dir);
  if (files.size() < cfg.total_docs) {
    throw ConfigError("corpus " + cfg.corpus_dir.string() + " holds " + std::to_string(files.size()) +
                      " documents; run.total_docs is " + std::to_string(cfg.total_docs));
  }
  const Query query = read_query_file(cfg.query_file, cfg.text);
  std::optional<std::vector<std::string>> models;
  if (cfg.model_dir) models = read_model_texts(*cfg.model_dir);

  auto evaluate_file = [&](const std::string& truncated, const fs::path& stem) -> std::optional<RougeReport> {
    if (!models) return std::nullopt;
    const RougeReport r = evaluate(truncated, *models, cfg.wlcs_exponent);
    write_text_file(fs::path(stem.string() + ".rouge.txt"), format_rouge_kv(r));
    return r;
  };

  RunReport report;
  std::vector<Document> initial;
  for (std::size_t i = 0; i < cfg.bootstrap_docs; ++i) initial.push_back(read_document_file(files[i], cfg.text));
  const Document boot = bootstrap_summary(initial, query, cfg.bootstrap);
  const fs::path boot_stem = cfg.out_dir / "bootstrap";
  report.bootstrap_path = boot_stem.string() + ".summary.txt";
  write_text_file(report.bootstrap_path, format_summary(boot));
  const std::string boot_truncated = truncate_words(boot, cfg.word_limit);
  write_text_file(boot_stem.string() + ".truncated.txt", boot_truncated);
  report.bootstrap_rouge = evaluate_file(boot_truncated, boot_stem);

  fs::path current = report.bootstrap_path;
  for (std::size_t d = cfg.bootstrap_docs; d < cfg.total_docs; ++d) {
    const std::size_t index = d - cfg.bootstrap_docs + 1;
    const Document summary = read_summary_file(current, cfg.text);
    const Document doc = read_document_file(files[d], cfg.text);
    const UpdateResult r = update_summary(summary, doc, query, cfg.scoring, cfg.selection);

    const fs::path stem = cfg.out_dir / update_stem(index);
    UpdateRecord rec;
    rec.update_index = index;
    rec.document_id = doc.doc_id;
    rec.summary_sentences = r.summary_sentences;
    rec.document_sentences = r.document_sentences;
    rec.embedded_sentences = r.embedded.size();
    rec.elapsed = r.elapsed;
    rec.summary_path = stem.string() + ".summary.txt";
    write_text_file(rec.summary_path, format_summary(r.summary));
    const std::string truncated = truncate_words(r.summary, cfg.word_limit);
    write_text_file(stem.string() + ".truncated.txt", truncated);
    write_text_file(stem.string() + ".meta.txt", format_update_metadata(r, doc.doc_id, cfg.text.segmenter_version));
    rec.rouge = evaluate_file(truncated, stem);
    report.updates.push_back(std::move(rec));
    current = report.updates.back().summary_path;
  }

  write_text_file(cfg.out_dir / "run_report.json", report_to_json(report).dump(2) + "\n");
  write_text_file(cfg.out_dir / "timings.tsv", format_timings(report));
  return report;
}

}  // namespace usum
