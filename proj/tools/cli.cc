// Copyright 2026 The Traitscan Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "traitscan/corpus_io.h"
#include "traitscan/correlation_model.h"
#include "traitscan/pipeline.h"
#include "traitscan/scorer.h"

namespace traitscan {

namespace {

struct RecognizeOptions {
  std::string corpus;
  std::string output;
  std::string model_path;
  std::string patterns_path;
  bool strong_only = false;
  bool invert_tt = false;
  bool split_lines = false;
  PipelineConfig cfg;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

// Writes to a sibling temporary and renames, so a failed write leaves no
// partial file behind.
void write_file(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << contents;
    out.close();
    if (!out) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("cannot write " + path);
    }
  }
  std::filesystem::rename(tmp, path);
}

std::vector<CorpusRecord> read_corpus(const std::string& path,
                                      bool split_lines) {
  std::ifstream in = open_input(path);
  std::vector<CorpusRecord> records;
  try {
    records = parse_corpus(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line(), e.byte_offset());
  }
  if (split_lines) records = split_by_lines(records);
  return records;
}

LabelMap read_labels(const std::string& path) {
  std::ifstream in = open_input(path);
  try {
    return read_label_file(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line(), e.byte_offset());
  }
}

CorrelationModel base_model(const RecognizeOptions& opts) {
  CorrelationModel model = default_model();
  if (!opts.model_path.empty()) {
    std::ifstream in = open_input(opts.model_path);
    model = load_model(in);
  }
  if (opts.strong_only) model = model.strong_only();
  if (opts.invert_tt) model = model.with_inverted_signs(Feature::kTypeToken);
  return model;
}

void add_pipeline_options(CLI::App& cmd, RecognizeOptions& opts) {
  cmd.add_option("corpus", opts.corpus, "author<TAB>text corpus")->required();
  cmd.add_flag("-w", opts.cfg.weighted, "weight correlations by firing rate");
  cmd.add_flag("-v", opts.cfg.variable_average,
               "recompute feature averages while processing");
  cmd.add_flag("-n", opts.cfg.normalize, "normalize hypothesis scores");
  cmd.add_flag("-r", opts.cfg.weak_trait_correction,
               "randomize scores of skewed traits");
  cmd.add_option("--seed", opts.cfg.seed, "random seed")
      ->capture_default_str();
  cmd.add_option("--sample-rate", opts.cfg.sample_rate,
                 "fraction of texts sampled for averages")
      ->capture_default_str();
  cmd.add_option("--skew-threshold", opts.cfg.skew_threshold,
                 "pole share that marks a trait as skewed")
      ->capture_default_str();
  cmd.add_option("--model", opts.model_path, "correlation table TSV");
  cmd.add_flag("--strong-only", opts.strong_only,
               "fire only p<.01 correlations");
  cmd.add_flag("--invert-tt", opts.invert_tt,
               "flip the signs of the type/token correlations");
  cmd.add_option("--min-confidence", opts.cfg.pattern_min_confidence,
                 "author confidence needed to learn patterns")
      ->capture_default_str();
  cmd.add_option("--top-k", opts.cfg.pattern_top_k, "patterns to keep")
      ->capture_default_str();
  cmd.add_option("--min-count", opts.cfg.pattern_min_count,
                 "corpus count needed for a pattern token")
      ->capture_default_str();
  cmd.add_flag("--split-lines", opts.split_lines,
               "split texts on escaped \\n before processing");
  cmd.add_option("--threads", opts.cfg.threads, "scoring threads")
      ->capture_default_str();
}

int cmd_recognize(const RecognizeOptions& opts, std::ostream& out) {
  PipelineConfig cfg = opts.cfg;
  cfg.validate();
  const auto records = read_corpus(opts.corpus, opts.split_lines);
  const auto groups = deduplicate_and_group(records);
  const PreparedCorpus corpus = prepare_corpus(groups);
  out << fmt::format("read {} records, {} texts from {} authors\n",
                     records.size(), corpus.texts.size(), groups.size());

  CorrelationModel model = base_model(opts);
  if (cfg.patterns) {
    if (!opts.patterns_path.empty()) {
      std::ifstream in = open_input(opts.patterns_path);
      model = model.with_patterns(load_patterns(in));
      out << fmt::format("loaded {} patterns\n", model.patterns().size());
    } else {
      const PatternExtraction extraction = extract_patterns(corpus, model, cfg);
      if (extraction.no_confident_authors) {
        out << "warning: no author reached the confidence threshold; "
               "no patterns learned\n";
      }
      out << fmt::format("learned {} patterns from {} texts\n",
                         extraction.new_patterns, extraction.kept_texts);
      model = extraction.model;
    }
  }

  const RunResult result = run(corpus, model, cfg);
  std::ostringstream authors, texts;
  write_author_results(result.authors, authors);
  write_annotated_texts(result.texts, texts);
  write_file(opts.output + ".authors.tsv", authors.str());
  write_file(opts.output + ".texts.tsv", texts.str());
  out << fmt::format("sample size {}; wrote {}.authors.tsv and {}.texts.tsv\n",
                     result.stats.sample_size, opts.output, opts.output);
  return kExitOk;
}

int cmd_extract_patterns(const RecognizeOptions& opts, std::ostream& out) {
  opts.cfg.validate();
  const auto records = read_corpus(opts.corpus, opts.split_lines);
  const auto groups = deduplicate_and_group(records);
  const PatternExtraction extraction =
      extract_patterns(groups, base_model(opts), opts.cfg);
  if (extraction.no_confident_authors) {
    out << "warning: no author reached the confidence threshold\n";
  }
  std::ostringstream patterns;
  const auto& all = extraction.model.patterns();
  dump_patterns(std::span(all).last(extraction.new_patterns), patterns);
  write_file(opts.output, patterns.str());
  out << fmt::format("learned {} patterns from {} texts; wrote {}\n",
                     extraction.new_patterns, extraction.kept_texts,
                     opts.output);
  return kExitOk;
}

int cmd_score(const std::string& pred_path, const std::string& gold_path,
              std::ostream& out) {
  const LabelMap pred = read_labels(pred_path);
  const LabelMap gold = read_labels(gold_path);
  write_report(score(pred, gold), out);
  return kExitOk;
}

int cmd_baseline(const std::string& gold_path, std::ostream& out) {
  const LabelMap gold = read_labels(gold_path);
  write_report(majority_baseline(gold), out);
  return kExitOk;
}

int cmd_split_lines(const std::string& in_path, const std::string& out_path,
                    std::ostream& out) {
  const auto records = read_corpus(in_path, true);
  std::ostringstream data;
  write_corpus(records, data);
  write_file(out_path, data.str());
  out << fmt::format("wrote {} records to {}\n", records.size(), out_path);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Unsupervised Big Five personality recognition from text"};
  app.require_subcommand(1);

  RecognizeOptions recognize;
  auto* recognize_cmd =
      app.add_subcommand("recognize", "label every author and text");
  add_pipeline_options(*recognize_cmd, recognize);
  recognize_cmd->add_flag("-t", recognize.cfg.patterns,
                          "learn token patterns and use them");
  recognize_cmd->add_option("--patterns", recognize.patterns_path,
                            "use patterns from this file with -t");
  recognize_cmd->add_option("-o,--output", recognize.output, "output prefix")
      ->required();

  RecognizeOptions extract;
  auto* extract_cmd = app.add_subcommand(
      "extract-patterns", "learn token patterns from a corpus");
  add_pipeline_options(*extract_cmd, extract);
  extract_cmd->add_option("-o,--output", extract.output, "patterns TSV")
      ->required();

  std::string pred_path, gold_path;
  auto* score_cmd =
      app.add_subcommand("score", "evaluate predictions against gold labels");
  score_cmd->add_option("predictions", pred_path, "author<TAB>label file")
      ->required();
  score_cmd->add_option("gold", gold_path, "author<TAB>label file")
      ->required();

  std::string baseline_gold;
  auto* baseline_cmd =
      app.add_subcommand("baseline", "score the all-y/all-n majority baseline");
  baseline_cmd->add_option("gold", baseline_gold, "author<TAB>label file")
      ->required();

  std::string split_in, split_out;
  auto* split_cmd =
      app.add_subcommand("split-lines", "split texts on escaped newlines");
  split_cmd->add_option("corpus", split_in, "input corpus")->required();
  split_cmd->add_option("-o,--output", split_out, "output corpus")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*recognize_cmd) return cmd_recognize(recognize, out);
    if (*extract_cmd) {
      extract.cfg.patterns = true;
      return cmd_extract_patterns(extract, out);
    }
    if (*score_cmd) return cmd_score(pred_path, gold_path, out);
    if (*baseline_cmd) return cmd_baseline(baseline_gold, out);
    if (*split_cmd) return cmd_split_lines(split_in, split_out, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInternalError;
}

}  // namespace traitscan
