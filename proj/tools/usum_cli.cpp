// usum: command-line front end.
//
//   usum bootstrap --corpus DIR --query FILE --out FILE
//   usum update    --summary FILE --doc FILE --query FILE --out FILE
//   usum run       --corpus DIR --query FILE [--models DIR] [--out DIR]
//   usum rouge     --candidate FILE --models DIR [--format kv|json]
//
// Every subcommand accepts --config FILE; flags given on the command line win
// over values from the file.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "usum/usum.hpp"

namespace {

struct Overrides {
  std::optional<std::string> config;
  std::optional<double> d;
  std::optional<double> threshold;
  std::optional<double> lambda;
  std::optional<double> kappa;
  std::optional<std::size_t> summary_size;
  std::optional<std::size_t> word_limit;
  std::optional<std::size_t> bootstrap_docs;
  std::optional<std::size_t> total_docs;
  std::optional<std::size_t> bootstrap_sentences;
  std::optional<double> wlcs_exponent;
  bool stopwords = false;
  std::optional<std::string> stopword_file;
};

void add_common_options(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config, "Flat key = value config file");
  sub->add_option("--d", o.d, "Bias factor of the node score");
  sub->add_option("--threshold", o.threshold, "Adjacency similarity threshold");
  sub->add_option("--lambda", o.lambda, "Relevance/redundancy trade-off");
  sub->add_option("--kappa", o.kappa, "Scaling factor of the temporary score");
  sub->add_option("--summary-size", o.summary_size, "Sentences per updated summary");
  sub->add_option("--word-limit", o.word_limit, "Words kept in truncated summaries");
  sub->add_option("--bootstrap-docs", o.bootstrap_docs, "Documents summarized by the bootstrap");
  sub->add_option("--total-docs", o.total_docs, "Documents processed by run");
  sub->add_option("--bootstrap-sentences", o.bootstrap_sentences, "Sentences in the bootstrap summary");
  sub->add_option("--wlcs-exponent", o.wlcs_exponent, "ROUGE-W weighting exponent");
  sub->add_flag("--stopwords", o.stopwords, "Remove stop words before weighting");
  sub->add_option("--stopword-file", o.stopword_file, "Stop-word list (whitespace-separated, # comment lines)");
}

usum::RunConfig resolve_config(const Overrides& o) {
  usum::RunConfig cfg;
  if (o.config) usum::apply_config_file(cfg, *o.config);
  if (o.d) cfg.scoring.d = *o.d;
  if (o.threshold) cfg.scoring.adjacency_threshold = *o.threshold;
  if (o.lambda) cfg.selection.lambda = *o.lambda;
  if (o.kappa) cfg.selection.kappa = *o.kappa;
  if (o.summary_size) cfg.selection.summary_size = *o.summary_size;
  if (o.word_limit) cfg.word_limit = *o.word_limit;
  if (o.bootstrap_docs) cfg.bootstrap_docs = *o.bootstrap_docs;
  if (o.total_docs) cfg.total_docs = *o.total_docs;
  if (o.bootstrap_sentences) cfg.bootstrap.summary_sentences = *o.bootstrap_sentences;
  if (o.wlcs_exponent) cfg.wlcs_exponent = *o.wlcs_exponent;
  if (o.stopwords) cfg.text.remove_stopwords = true;
  if (o.stopword_file) cfg.stopword_file = *o.stopword_file;
  return cfg;
}

int cmd_bootstrap(usum::RunConfig cfg, const std::string& out) {
  cfg.bootstrap.validate();
  usum::resolve_text_config(cfg);
  const auto files = usum::list_files(cfg.corpus_dir);
  if (files.size() < cfg.bootstrap_docs) {
    throw usum::ConfigError("corpus " + cfg.corpus_dir.string() + " holds " + std::to_string(files.size()) +
                            " documents; bootstrap needs " + std::to_string(cfg.bootstrap_docs));
  }
  const usum::Query query = usum::read_query_file(cfg.query_file, cfg.text);
  std::vector<usum::Document> docs;
  for (std::size_t i = 0; i < cfg.bootstrap_docs; ++i) docs.push_back(usum::read_document_file(files[i], cfg.text));
  const usum::Document summary = usum::bootstrap_summary(docs, query, cfg.bootstrap);
  usum::write_text_file(out, usum::format_summary(summary));
  usum::KeyValueWriter meta;
  meta.add("format", "usum-bootstrap/1").add("documents", docs.size()).add("selected", summary.size());
  usum::write_text_file(out + ".meta", meta.str());
  return 0;
}

struct UpdatePaths {
  std::string summary;
  std::string doc;
  std::string out;
  std::optional<std::string> meta;
  std::optional<std::string> truncated;
  std::optional<std::string> scores;
  std::optional<std::string> edges;
  bool verbose = false;
};

int cmd_update(usum::RunConfig cfg, const UpdatePaths& p) {
  cfg.scoring.validate();
  cfg.selection.validate();
  usum::resolve_text_config(cfg);
  const usum::Document summary = usum::read_summary_file(p.summary, cfg.text);
  const usum::Document doc = usum::read_document_file(p.doc, cfg.text);
  const usum::Query query = usum::read_query_file(cfg.query_file, cfg.text);
  const usum::UpdateResult r = usum::update_summary(summary, doc, query, cfg.scoring, cfg.selection);

  usum::write_text_file(p.out, usum::format_summary(r.summary));
  usum::write_text_file(p.meta.value_or(p.out + ".meta"),
                        usum::format_update_metadata(r, doc.doc_id, cfg.text.segmenter_version));
  if (p.truncated) usum::write_text_file(*p.truncated, usum::truncate_words(r.summary, cfg.word_limit));
  if (p.scores) {
    std::ostringstream os;
    usum::write_scores(os, r.scores);
    usum::write_text_file(*p.scores, os.str());
  }
  if (p.edges) {
    std::ostringstream os;
    usum::write_edges(os, r.graph);
    usum::write_text_file(*p.edges, os.str());
  }
  if (p.verbose) {
    usum::write_trace(std::cerr, r.embedded);
    std::cerr << "elapsed_seconds=" << usum::format_double(r.elapsed.count()) << '\n';
  }
  return 0;
}

int cmd_run(usum::RunConfig cfg) {
  const usum::RunReport report = usum::run_cluster(cfg);
  for (const auto& u : report.updates) {
    std::cout << "update=" << u.update_index << " document=" << u.document_id << " summary=" << u.summary_sentences
              << " document_sentences=" << u.document_sentences << " embedded=" << u.embedded_sentences
              << " seconds=" << usum::format_double(u.elapsed.count());
    if (u.rouge) {
      std::cout << " rouge1=" << usum::format_double(u.rouge->rouge1)
                << " rouge2=" << usum::format_double(u.rouge->rouge2)
                << " rougeW=" << usum::format_double(u.rouge->rougeW)
                << " rougeSU4=" << usum::format_double(u.rouge->rougeSU4);
    }
    std::cout << '\n';
  }
  return 0;
}

int cmd_rouge(const usum::RunConfig& cfg, const std::string& candidate, const std::string& format) {
  const auto models = usum::read_model_texts(*cfg.model_dir);
  const usum::RougeReport r = usum::evaluate(usum::read_text_file(candidate), models, cfg.wlcs_exponent);
  if (format == "json") {
    std::cout << usum::rouge_to_json(r).dump(2) << '\n';
  } else {
    std::cout << usum::format_rouge_kv(r);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incremental query-focused extractive summarization"};
  app.name("usum");
  app.require_subcommand(1);

  Overrides overrides;
  std::string corpus, query, models, out, candidate, format = "kv";
  UpdatePaths update_paths;

  auto* bootstrap = app.add_subcommand("bootstrap", "Initial summary from the first documents of a corpus");
  bootstrap->add_option("--corpus", corpus, "Directory of documents")->required();
  bootstrap->add_option("--query", query, "Query file")->required();
  bootstrap->add_option("--out", out, "Summary output file")->required();
  add_common_options(bootstrap, overrides);

  auto* update = app.add_subcommand("update", "Fold one new document into an existing summary");
  update->add_option("--summary", update_paths.summary, "Current summary, one sentence per line")->required();
  update->add_option("--doc", update_paths.doc, "New document")->required();
  update->add_option("--query", query, "Query file")->required();
  update->add_option("--out", update_paths.out, "Updated summary output file")->required();
  update->add_option("--meta", update_paths.meta, "Metadata sidecar (default: OUT.meta)");
  update->add_option("--truncated", update_paths.truncated, "Also write the word-limited summary here");
  update->add_option("--scores", update_paths.scores, "Dump base scores (index<TAB>score)");
  update->add_option("--edges", update_paths.edges, "Dump the similarity graph (i<TAB>j<TAB>weight)");
  update->add_flag("-v,--verbose", update_paths.verbose, "Print the insertion trace to stderr");
  add_common_options(update, overrides);

  auto* run = app.add_subcommand("run", "Bootstrap, then update once per remaining document");
  run->add_option("--corpus", corpus, "Directory of documents, processed in filename order")->required();
  run->add_option("--query", query, "Query file")->required();
  run->add_option("--models", models, "Directory of model summaries for ROUGE");
  run->add_option("--out", out, "Output directory (default: usum-run)");
  add_common_options(run, overrides);

  auto* rouge = app.add_subcommand("rouge", "Evaluate a candidate summary against model summaries");
  rouge->add_option("--candidate", candidate, "Candidate summary file")->required();
  rouge->add_option("--models", models, "Directory of model summaries")->required();
  rouge->add_option("--format", format, "Output format")->check(CLI::IsMember({"kv", "json"}));
  add_common_options(rouge, overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usum: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    usum::RunConfig cfg = resolve_config(overrides);
    if (!corpus.empty()) cfg.corpus_dir = corpus;
    if (!query.empty()) cfg.query_file = query;
    if (!models.empty()) cfg.model_dir = usum::fs::path(models);
    if (*run) {
      if (!out.empty()) cfg.out_dir = out;
      return cmd_run(cfg);
    }
    if (*bootstrap) return cmd_bootstrap(cfg, out);
    if (*update) return cmd_update(cfg, update_paths);
    if (*rouge) return cmd_rouge(cfg, candidate, format);
  } catch (const std::exception& e) {
    std::cerr << "usum: error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
