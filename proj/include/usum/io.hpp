#pragma once

// Plain-text file formats: documents, summaries (one sentence per line),
// single-line queries, key=value sidecars and ROUGE reports.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "usum/error.hpp"
#include "usum/rouge.hpp"
#include "usum/textcore.hpp"

namespace usum {

namespace fs = std::filesystem;

/// Shortest decimal form that round-trips; "nan"/"inf" spelled out.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

inline std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error while reading " + path.string());
  return content;
}

inline void write_text_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("error while writing " + path.string());
}

/// Regular, non-hidden files of a directory in lexicographic filename order.
inline std::vector<fs::path> list_files(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("not a readable directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().filename().string().starts_with('.')) continue;
    files.push_back(entry.path());
  }
  if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
  return files;
}

inline Document read_document_file(const fs::path& path, const TextConfig& cfg = {}) {
  return make_document(path.filename().string(), read_text_file(path), cfg);
}

inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty() || end != text.size()) lines.emplace_back(line);
    start = end + 1;
  }
  return lines;
}

/// A summary file holds one sentence per line; lines are never re-segmented.
inline Document read_summary_file(const fs::path& path, const TextConfig& cfg = {}) {
  return make_document_from_sentences(path.filename().string(), split_lines(read_text_file(path)), cfg);
}

inline std::string format_summary(const Document& summary) {
  std::string out;
  for (const auto& s : summary.sentences) {
    out += s.raw_text;
    out.push_back('\n');
  }
  return out;
}

inline Query read_query_file(const fs::path& path, const TextConfig& cfg = {}) {
  return make_query(read_text_file(path), cfg);
}

/// Whitespace-separated words; lines starting with '#' are comments.
inline std::vector<std::string> read_stopword_file(const fs::path& path) {
  std::vector<std::string> words;
  for (auto& line : split_lines(read_text_file(path))) {
    if (line.starts_with('#')) continue;
    for (auto& tok : tokenize(line)) words.push_back(std::move(tok));
  }
  return words;
}

/// Ordered key=value lines.
class KeyValueWriter {
 public:
  KeyValueWriter& add(std::string_view key, std::string_view value) {
    text_.append(key);
    text_.push_back('=');
    text_.append(value);
    text_.push_back('\n');
    return *this;
  }
  KeyValueWriter& add(std::string_view key, const char* value) { return add(key, std::string_view(value)); }
  KeyValueWriter& add(std::string_view key, double value) { return add(key, format_double(value)); }
  KeyValueWriter& add(std::string_view key, std::size_t value) { return add(key, std::to_string(value)); }
  KeyValueWriter& add(std::string_view key, bool value) { return add(key, value ? "true" : "false"); }

  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

inline std::string format_rouge_kv(const RougeReport& r) {
  KeyValueWriter kv;
  kv.add("rouge1", r.rouge1).add("rouge2", r.rouge2).add("rougeW", r.rougeW).add("rougeSU4", r.rougeSU4);
  return kv.str();
}

inline nlohmann::ordered_json rouge_to_json(const RougeReport& r) {
  nlohmann::ordered_json j;
  j["rouge1"] = r.rouge1;
  j["rouge2"] = r.rouge2;
  j["rougeW"] = r.rougeW;
  j["rougeSU4"] = r.rougeSU4;
  return j;
}

/// Model summaries: every regular file in dir, read as plain text.
inline std::vector<std::string> read_model_texts(const fs::path& dir) {
  std::vector<std::string> texts;
  for (const auto& path : list_files(dir)) texts.push_back(read_text_file(path));
  if (texts.empty()) throw IoError("no model summaries in " + dir.string());
  return texts;
}

}  // namespace usum
