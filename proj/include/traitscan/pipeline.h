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

// Unsupervised personality recognition in three phases.
//
//  1. preprocess: sample a fraction of the texts, compute per-feature means
//     and firing rates, and (optionally) find traits whose labels are skewed
//     towards one pole.
//  2. process_text: one hypothesis per text. A feature whose value is
//     strictly above the population mean fires its significant
//     correlations; the signed sum per trait maps to y (> 0), n (< 0) or
//     o (= 0). A sum within rounding noise of zero, relative to the
//     magnitudes added into it, is zero.
//  3. aggregate_author: majority label per trait over the author's texts,
//     with confidence m/T and variability avg_conf/T.
//
// Optional behaviour (PipelineConfig):
//  w  contributions are scaled by (1 - running firing rate of the feature).
//  v  the reference mean is a running mean over the texts processed so far,
//     seeded with the sample mean.
//  n  scores are divided by the number of correlations that fired for the
//     trait; zero scores take the sign of the trait's cumulative score so far
//     (y on a tie), so no 'o' labels are emitted.
//  r  traits found skewed during preprocessing get a random score drawn
//     uniformly from [-s, s], s being the mean |score| of the other traits.
//  t  learned token patterns (see extract_patterns) fire when their token
//     occurs in the text.
//
// Ordering contract: with v or w enabled every hypothesis depends on all
// texts before it, so texts are processed in a single sequential pass. With
// both disabled the scoring step is independent per text and run() may
// spread it over `threads` workers; the order-dependent tail (r draws, n
// zero resolution and the cumulative scores) is still applied sequentially
// in corpus order, so results equal the single-threaded run bit for bit.

#ifndef TRAITSCAN_PIPELINE_H_
#define TRAITSCAN_PIPELINE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "traitscan/author_result.h"
#include "traitscan/corpus_io.h"
#include "traitscan/correlation_model.h"
#include "traitscan/features.h"
#include "traitscan/sampling.h"
#include "traitscan/trait.h"

namespace traitscan {

struct PipelineConfig {
  bool weighted = false;               // w
  bool variable_average = false;       // v
  bool normalize = false;              // n
  bool weak_trait_correction = false;  // r
  bool patterns = false;               // t

  double sample_rate = 0.20;
  std::uint64_t seed = 42;
  double skew_threshold = 0.95;
  double pattern_min_confidence = 0.6;
  std::size_t pattern_top_k = 100;
  std::size_t pattern_min_count = 5;
  std::size_t threads = 1;

  // Throws std::invalid_argument on out-of-range values.
  void validate() const;
  bool order_dependent() const { return weighted || variable_average; }
};

struct PreparedText {
  CorpusRecord record;
  std::size_t author = 0;  // index into PreparedCorpus::authors
  FeatureVector features;
  std::vector<std::string> token_set;  // sorted, unique
};

// Texts in processing order (ascending input position) with their features
// computed against the corpus frequency table.
struct PreparedCorpus {
  std::vector<std::string> authors;  // group order
  std::vector<PreparedText> texts;
  FrequencyTable frequencies;
};

// Throws std::invalid_argument if a group's positions do not match its
// texts or two texts share a position.
PreparedCorpus prepare_corpus(std::span<const AuthorGroup> groups);

struct PopulationStats {
  FeatureVector mean;
  // Fraction of sampled texts whose value is strictly above the mean.
  std::array<double, kFeatureCount> firing_rate{};
  // Fraction of sampled texts containing each pattern token of the model.
  std::unordered_map<std::string, double> pattern_firing_rate;
  PerTrait<bool> skewed{};
  std::size_t sample_size = 0;
  std::vector<std::size_t> sample;  // indices into PreparedCorpus::texts

  bool is_skewed(Trait t) const { return skewed[index(t)]; }
};

// Throws std::invalid_argument on an empty corpus.
PopulationStats preprocess(const PreparedCorpus& corpus,
                           const CorrelationModel& model,
                           const PipelineConfig& cfg);
PopulationStats preprocess(std::span<const AuthorGroup> groups,
                           const CorrelationModel& model,
                           const PipelineConfig& cfg);

// Number of texts drawn for preprocessing: ceil(rate * total), at least 1.
std::size_t sample_size_for(std::size_t total_texts, double sample_rate);

struct TextHypothesis {
  PerTrait<double> scores{};
  // Correlations (features and patterns) that contributed to each trait.
  PerTrait<std::size_t> fired{};
  PersonalityLabel label;
};

// Order-dependent state threaded through process_text.
struct RunningState {
  RunningState(const PopulationStats& stats, const CorrelationModel& model,
               const PipelineConfig& cfg);

  // Firing rate seen so far, including the preprocessing sample.
  double fire_rate(Feature f) const;
  double pattern_fire_rate(const std::string& token) const;

  FeatureVector mean;              // v
  double mean_weight = 0.0;
  std::array<double, kFeatureCount> fires{};  // w
  std::unordered_map<std::string, double> pattern_fires;
  double observed = 0.0;
  PerTrait<double> cumulative_score{};  // n
  Rng rng;                              // r
  PerTrait<double> fallback_magnitude{};
};

TextHypothesis process_text(const FeatureVector& features,
                            std::span<const std::string> token_set,
                            const PopulationStats& stats,
                            const CorrelationModel& model,
                            const PipelineConfig& cfg, RunningState& running);

// Throws std::invalid_argument if `labels` is empty. Ties break y > n > o.
AuthorResult aggregate_author(std::span<const PersonalityLabel> labels,
                              std::string author_id);
AuthorResult aggregate_author(std::span<const TextHypothesis> hypotheses,
                              std::string author_id);

struct RunResult {
  std::vector<AuthorResult> authors;   // group order
  std::vector<TextAnnotation> texts;   // processing order
  std::vector<TextHypothesis> hypotheses;  // parallel to texts
  PopulationStats stats;
};

RunResult run(const PreparedCorpus& corpus, const CorrelationModel& model,
              const PipelineConfig& cfg);
RunResult run(std::span<const AuthorGroup> groups,
              const CorrelationModel& model, const PipelineConfig& cfg);

struct PatternExtraction {
  CorrelationModel model;
  std::size_t kept_texts = 0;
  std::size_t new_patterns = 0;
  // Set when no author reached the confidence threshold; the model is then
  // returned unchanged.
  bool no_confident_authors = false;
};

// Runs the pipeline without patterns, keeps the texts of authors whose
// average confidence reaches cfg.pattern_min_confidence and, for every
// token seen at least cfg.pattern_min_count times in the corpus, measures
//   a(trait, token) = P(token | author label y) - P(token | author label n)
// over the kept texts. The cfg.pattern_top_k tokens with the largest max|a|
// become patterns (one per trait with a != 0), appended to the model.
PatternExtraction extract_patterns(const PreparedCorpus& corpus,
                                   const CorrelationModel& model,
                                   const PipelineConfig& cfg);
PatternExtraction extract_patterns(std::span<const AuthorGroup> groups,
                                   const CorrelationModel& model,
                                   const PipelineConfig& cfg);

}  // namespace traitscan

#endif  // TRAITSCAN_PIPELINE_H_
