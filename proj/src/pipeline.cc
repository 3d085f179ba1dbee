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

#include "traitscan/pipeline.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <unordered_set>
#include <utility>

#include <fmt/format.h>

namespace traitscan {

namespace {

// Seed offset separating the randomization stream from the sampling stream.
constexpr std::uint64_t kRandomizationSalt = 0x9E3779B97F4A7C15ULL;

// A trait score smaller than this fraction of the magnitudes summed into it
// is cancellation noise and counts as zero.
constexpr double kCancellationTolerance = 1e-9;

struct RawScore {
  PerTrait<double> scores{};
  PerTrait<std::size_t> fired{};
  std::array<bool, kFeatureCount> above{};
};

bool contains_token(std::span<const std::string> token_set,
                    const std::string& token) {
  return std::binary_search(token_set.begin(), token_set.end(), token);
}

std::vector<std::string> pattern_tokens(const CorrelationModel& model) {
  std::vector<std::string> tokens;
  for (const PatternCorrelation& p : model.patterns()) tokens.push_back(p.token);
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  return tokens;
}

// Scoring that depends only on the reference mean and, under w, the firing
// rates held by `running`.
RawScore score_text(const FeatureVector& features,
                    std::span<const std::string> token_set,
                    const FeatureVector& reference_mean,
                    const CorrelationModel& model, const PipelineConfig& cfg,
                    const RunningState& running) {
  RawScore raw;
  PerTrait<double> magnitude{};
  for (Feature f : kAllFeatures) {
    raw.above[index(f)] = features[f] > reference_mean[f];
    if (!raw.above[index(f)] || !model.has_feature(f)) continue;
    const double weight = cfg.weighted ? 1.0 - running.fire_rate(f) : 1.0;
    for (const auto& [trait, r] : firing_contributions(model, f)) {
      raw.scores[index(trait)] += r * weight;
      magnitude[index(trait)] += std::fabs(r * weight);
      ++raw.fired[index(trait)];
    }
  }
  if (cfg.patterns) {
    for (const PatternCorrelation& p : model.patterns()) {
      if (!contains_token(token_set, p.token)) continue;
      const double weight =
          cfg.weighted ? 1.0 - running.pattern_fire_rate(p.token) : 1.0;
      raw.scores[index(p.trait)] += p.association * weight;
      magnitude[index(p.trait)] += std::fabs(p.association * weight);
      ++raw.fired[index(p.trait)];
    }
  }
  for (std::size_t t = 0; t < kTraitCount; ++t) {
    if (std::fabs(raw.scores[t]) <= kCancellationTolerance * magnitude[t]) {
      raw.scores[t] = 0.0;
    }
  }
  return raw;
}

// Randomization, normalization, labeling and the cumulative scores. Must be
// applied in corpus order.
TextHypothesis finalize(const RawScore& raw, const PopulationStats& stats,
                        const PipelineConfig& cfg, RunningState& running) {
  TextHypothesis h;
  h.scores = raw.scores;
  h.fired = raw.fired;

  if (cfg.weak_trait_correction) {
    double unskewed_sum = 0.0;
    std::size_t unskewed = 0;
    for (Trait t : kAllTraits) {
      if (stats.is_skewed(t)) continue;
      unskewed_sum += std::fabs(h.scores[index(t)]);
      ++unskewed;
    }
    const double spread = unskewed == 0 ? 0.0 : unskewed_sum / unskewed;
    for (Trait t : kAllTraits) {
      if (!stats.is_skewed(t)) continue;
      const double u = uniform_unit(running.rng);
      h.scores[index(t)] =
          spread > 0.0 ? (2.0 * u - 1.0) * spread
                       : (u < 0.5 ? -1.0 : 1.0) *
                             running.fallback_magnitude[index(t)];
      h.fired[index(t)] = 1;
    }
  }

  for (Trait t : kAllTraits) {
    double& score = h.scores[index(t)];
    if (cfg.normalize && h.fired[index(t)] > 0) {
      score /= static_cast<double>(h.fired[index(t)]);
    }
    TraitLabel label = TraitLabel::kOmitted;
    if (score > 0.0) {
      label = TraitLabel::kPositive;
    } else if (score < 0.0) {
      label = TraitLabel::kNegative;
    } else if (cfg.normalize) {
      label = running.cumulative_score[index(t)] < 0.0 ? TraitLabel::kNegative
                                                        : TraitLabel::kPositive;
    }
    h.label[t] = label;
  }
  for (Trait t : kAllTraits) {
    running.cumulative_score[index(t)] += h.scores[index(t)];
  }
  return h;
}

void update_running(const RawScore& raw, const FeatureVector& features,
                    std::span<const std::string> token_set,
                    const PipelineConfig& cfg, RunningState& running) {
  if (cfg.variable_average) {
    running.mean_weight += 1.0;
    for (Feature f : kAllFeatures) {
      running.mean[f] += (features[f] - running.mean[f]) / running.mean_weight;
    }
  }
  if (cfg.weighted) {
    running.observed += 1.0;
    for (Feature f : kAllFeatures) {
      if (raw.above[index(f)]) running.fires[index(f)] += 1.0;
    }
    for (auto& [token, fires] : running.pattern_fires) {
      if (contains_token(token_set, token)) fires += 1.0;
    }
  }
}

}  // namespace

void PipelineConfig::validate() const {
  if (!(sample_rate > 0.0 && sample_rate <= 1.0)) {
    throw std::invalid_argument("sample rate must be in (0, 1]");
  }
  if (!(skew_threshold > 0.5 && skew_threshold <= 1.0)) {
    throw std::invalid_argument("skew threshold must be in (0.5, 1]");
  }
  if (!(pattern_min_confidence >= 0.0 && pattern_min_confidence <= 1.0)) {
    throw std::invalid_argument("pattern confidence must be in [0, 1]");
  }
  if (threads == 0) throw std::invalid_argument("threads must be positive");
}

PreparedCorpus prepare_corpus(std::span<const AuthorGroup> groups) {
  struct Slot {
    std::size_t position;
    std::size_t group;
    std::size_t text;
  };
  std::vector<Slot> slots;
  PreparedCorpus corpus;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const AuthorGroup& group = groups[g];
    if (group.texts.empty()) {
      throw std::invalid_argument("author '" + group.author_id +
                                  "' has no texts");
    }
    if (group.positions.size() != group.texts.size()) {
      throw std::invalid_argument("author '" + group.author_id +
                                  "' has mismatched text positions");
    }
    corpus.authors.push_back(group.author_id);
    for (std::size_t i = 0; i < group.texts.size(); ++i) {
      slots.push_back(Slot{group.positions[i], g, i});
    }
  }
  std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
    return a.position < b.position;
  });
  for (std::size_t i = 1; i < slots.size(); ++i) {
    if (slots[i].position == slots[i - 1].position) {
      throw std::invalid_argument(
          fmt::format("two texts share position {}", slots[i].position));
    }
  }

  std::vector<std::vector<std::string>> tokens;
  tokens.reserve(slots.size());
  for (const Slot& s : slots) {
    const std::string& text = groups[s.group].texts[s.text];
    tokens.push_back(tokenize(text));
    for (const std::string& token : tokens.back()) corpus.frequencies.add(token);
  }
  corpus.texts.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const Slot& s = slots[i];
    PreparedText prepared;
    prepared.record = CorpusRecord{groups[s.group].author_id,
                                   groups[s.group].texts[s.text]};
    prepared.author = s.group;
    prepared.features =
        extract_features(prepared.record.text, tokens[i], corpus.frequencies);
    prepared.token_set = std::move(tokens[i]);
    std::sort(prepared.token_set.begin(), prepared.token_set.end());
    prepared.token_set.erase(
        std::unique(prepared.token_set.begin(), prepared.token_set.end()),
        prepared.token_set.end());
    corpus.texts.push_back(std::move(prepared));
  }
  return corpus;
}

std::size_t sample_size_for(std::size_t total_texts, double sample_rate) {
  if (total_texts == 0) return 0;
  // The epsilon keeps exact products such as 0.2 * 15 from rounding up.
  const double wanted =
      std::ceil(sample_rate * static_cast<double>(total_texts) - 1e-9);
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(wanted, 1.0)),
                                 1, total_texts);
}

PopulationStats preprocess(const PreparedCorpus& corpus,
                           const CorrelationModel& model,
                           const PipelineConfig& cfg) {
  cfg.validate();
  if (corpus.texts.empty()) {
    throw std::invalid_argument("cannot preprocess an empty corpus");
  }
  PopulationStats stats;
  Rng rng(cfg.seed);
  stats.sample = reservoir_sample(
      corpus.texts.size(), sample_size_for(corpus.texts.size(), cfg.sample_rate),
      rng);
  stats.sample_size = stats.sample.size();

  double seen = 0.0;
  for (std::size_t i : stats.sample) {
    seen += 1.0;
    const FeatureVector& v = corpus.texts[i].features;
    for (Feature f : kAllFeatures) {
      stats.mean[f] += (v[f] - stats.mean[f]) / seen;
    }
  }
  const auto k = static_cast<double>(stats.sample_size);
  for (Feature f : kAllFeatures) {
    std::size_t above = 0;
    for (std::size_t i : stats.sample) {
      if (corpus.texts[i].features[f] > stats.mean[f]) ++above;
    }
    stats.firing_rate[index(f)] = static_cast<double>(above) / k;
  }
  for (const std::string& token : pattern_tokens(model)) {
    std::size_t present = 0;
    for (std::size_t i : stats.sample) {
      if (contains_token(corpus.texts[i].token_set, token)) ++present;
    }
    stats.pattern_firing_rate[token] = static_cast<double>(present) / k;
  }

  if (cfg.weak_trait_correction) {
    PipelineConfig plain = cfg;
    plain.weighted = plain.variable_average = plain.normalize =
        plain.weak_trait_correction = false;
    RunningState running(stats, model, plain);
    PerTrait<std::size_t> positive{}, negative{};
    for (std::size_t i : stats.sample) {
      const PreparedText& text = corpus.texts[i];
      const TextHypothesis h = process_text(text.features, text.token_set,
                                            stats, model, plain, running);
      for (Trait t : kAllTraits) {
        if (h.label[t] == TraitLabel::kPositive) ++positive[index(t)];
        if (h.label[t] == TraitLabel::kNegative) ++negative[index(t)];
      }
    }
    for (Trait t : kAllTraits) {
      const std::size_t labeled = positive[index(t)] + negative[index(t)];
      if (labeled == 0) continue;
      const double share =
          static_cast<double>(std::max(positive[index(t)], negative[index(t)])) /
          static_cast<double>(labeled);
      stats.skewed[index(t)] = share >= cfg.skew_threshold;
    }
  }
  return stats;
}

PopulationStats preprocess(std::span<const AuthorGroup> groups,
                           const CorrelationModel& model,
                           const PipelineConfig& cfg) {
  return preprocess(prepare_corpus(groups), model, cfg);
}

RunningState::RunningState(const PopulationStats& stats,
                           const CorrelationModel& model,
                           const PipelineConfig& cfg)
    : mean(stats.mean),
      mean_weight(static_cast<double>(stats.sample_size)),
      observed(static_cast<double>(stats.sample_size)),
      rng(cfg.seed ^ kRandomizationSalt) {
  for (Feature f : kAllFeatures) {
    fires[index(f)] = stats.firing_rate[index(f)] * observed;
  }
  for (const std::string& token : pattern_tokens(model)) {
    auto it = stats.pattern_firing_rate.find(token);
    pattern_fires[token] =
        it == stats.pattern_firing_rate.end() ? 0.0 : it->second * observed;
  }
  // Scale of a randomized score when no unskewed trait scored: the mean
  // |r| of the trait's firing correlations.
  PerTrait<double> sum{};
  PerTrait<std::size_t> count{};
  for (const Correlation& c : model.correlations()) {
    if (!c.fires()) continue;
    sum[index(c.trait)] += std::fabs(c.r);
    ++count[index(c.trait)];
  }
  if (cfg.patterns) {
    for (const PatternCorrelation& p : model.patterns()) {
      sum[index(p.trait)] += std::fabs(p.association);
      ++count[index(p.trait)];
    }
  }
  for (Trait t : kAllTraits) {
    const std::size_t i = index(t);
    fallback_magnitude[i] =
        count[i] == 0 || sum[i] == 0.0 ? 1.0 : sum[i] / count[i];
  }
}

double RunningState::fire_rate(Feature f) const {
  return observed > 0.0 ? fires[index(f)] / observed : 0.0;
}

double RunningState::pattern_fire_rate(const std::string& token) const {
  auto it = pattern_fires.find(token);
  if (it == pattern_fires.end() || observed <= 0.0) return 0.0;
  return it->second / observed;
}

TextHypothesis process_text(const FeatureVector& features,
                            std::span<const std::string> token_set,
                            const PopulationStats& stats,
                            const CorrelationModel& model,
                            const PipelineConfig& cfg, RunningState& running) {
  const FeatureVector& reference =
      cfg.variable_average ? running.mean : stats.mean;
  const RawScore raw =
      score_text(features, token_set, reference, model, cfg, running);
  TextHypothesis h = finalize(raw, stats, cfg, running);
  update_running(raw, features, token_set, cfg, running);
  return h;
}

AuthorResult aggregate_author(std::span<const PersonalityLabel> labels,
                              std::string author_id) {
  if (labels.empty()) {
    throw std::invalid_argument("author '" + author_id + "' has no hypotheses");
  }
  AuthorResult result;
  result.author_id = std::move(author_id);
  result.text_count = labels.size();
  const auto T = static_cast<double>(labels.size());
  std::size_t majority_total = 0;
  for (Trait t : kAllTraits) {
    std::size_t yes = 0, no = 0, omitted = 0;
    for (const PersonalityLabel& l : labels) {
      switch (l[t]) {
        case TraitLabel::kPositive: ++yes; break;
        case TraitLabel::kNegative: ++no; break;
        case TraitLabel::kOmitted: ++omitted; break;
      }
    }
    TraitLabel winner = TraitLabel::kPositive;
    std::size_t best = yes;
    if (no > best) {
      winner = TraitLabel::kNegative;
      best = no;
    }
    if (omitted > best) {
      winner = TraitLabel::kOmitted;
      best = omitted;
    }
    result.label[t] = winner;
    result.majority_count[index(t)] = best;
    result.trait_confidence[index(t)] = static_cast<double>(best) / T;
    majority_total += best;
  }
  result.avg_confidence = static_cast<double>(majority_total) /
                          (static_cast<double>(kTraitCount) * T);
  result.variability = result.avg_confidence / T;
  return result;
}

AuthorResult aggregate_author(std::span<const TextHypothesis> hypotheses,
                              std::string author_id) {
  std::vector<PersonalityLabel> labels;
  labels.reserve(hypotheses.size());
  for (const TextHypothesis& h : hypotheses) labels.push_back(h.label);
  return aggregate_author(labels, std::move(author_id));
}

RunResult run(const PreparedCorpus& corpus, const CorrelationModel& model,
              const PipelineConfig& cfg) {
  RunResult result;
  result.stats = preprocess(corpus, model, cfg);
  const PopulationStats& stats = result.stats;
  RunningState running(stats, model, cfg);

  const std::size_t n = corpus.texts.size();
  result.hypotheses.resize(n);
  const std::size_t workers = std::min(cfg.threads, n);
  if (!cfg.order_dependent() && workers > 1) {
    std::vector<RawScore> raw(n);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t i = w; i < n; i += workers) {
            const PreparedText& text = corpus.texts[i];
            raw[i] = score_text(text.features, text.token_set, stats.mean,
                                model, cfg, running);
          }
        });
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      result.hypotheses[i] = finalize(raw[i], stats, cfg, running);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const PreparedText& text = corpus.texts[i];
      result.hypotheses[i] = process_text(text.features, text.token_set, stats,
                                          model, cfg, running);
    }
  }

  std::vector<std::vector<PersonalityLabel>> by_author(corpus.authors.size());
  result.texts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    by_author[corpus.texts[i].author].push_back(result.hypotheses[i].label);
    result.texts.push_back(
        TextAnnotation{corpus.texts[i].record, result.hypotheses[i].label});
  }
  result.authors.reserve(corpus.authors.size());
  for (std::size_t a = 0; a < corpus.authors.size(); ++a) {
    result.authors.push_back(aggregate_author(by_author[a], corpus.authors[a]));
  }
  return result;
}

RunResult run(std::span<const AuthorGroup> groups,
              const CorrelationModel& model, const PipelineConfig& cfg) {
  return run(prepare_corpus(groups), model, cfg);
}

PatternExtraction extract_patterns(const PreparedCorpus& corpus,
                                   const CorrelationModel& model,
                                   const PipelineConfig& cfg) {
  PipelineConfig base = cfg;
  base.patterns = false;
  const RunResult baseline = run(corpus, model, base);

  // Presence counts per token and trait: [0] under y, [1] under n.
  using PoleCounts = PerTrait<std::array<std::size_t, 2>>;
  std::unordered_map<std::string_view, PoleCounts> presence;
  PoleCounts labeled{};
  std::size_t kept = 0;
  for (const PreparedText& text : corpus.texts) {
    const AuthorResult& author = baseline.authors[text.author];
    if (author.avg_confidence < cfg.pattern_min_confidence) continue;
    ++kept;
    for (Trait t : kAllTraits) {
      const TraitLabel l = author.label[t];
      if (l == TraitLabel::kOmitted) continue;
      const std::size_t pole = l == TraitLabel::kPositive ? 0 : 1;
      ++labeled[index(t)][pole];
      for (const std::string& token : text.token_set) {
        if (corpus.frequencies.count(token) < cfg.pattern_min_count) continue;
        ++presence[token][index(t)][pole];
      }
    }
  }
  if (kept == 0) return PatternExtraction{model, 0, 0, true};

  struct Candidate {
    std::string_view token;
    PerTrait<double> association{};
    double strength = 0.0;
  };
  std::vector<Candidate> candidates;
  for (const auto& [token, counts] : presence) {
    Candidate c{token, {}, 0.0};
    for (Trait t : kAllTraits) {
      const auto& [ny, nn] = labeled[index(t)];
      if (ny == 0 || nn == 0) continue;
      const double a =
          static_cast<double>(counts[index(t)][0]) / static_cast<double>(ny) -
          static_cast<double>(counts[index(t)][1]) / static_cast<double>(nn);
      c.association[index(t)] = a;
      c.strength = std::max(c.strength, std::fabs(a));
    }
    if (c.strength > 0.0) candidates.push_back(c);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              return std::tie(b.strength, a.token) <
                     std::tie(a.strength, b.token);
            });
  if (candidates.size() > cfg.pattern_top_k) {
    candidates.resize(cfg.pattern_top_k);
  }

  std::vector<PatternCorrelation> patterns = model.patterns();
  std::size_t added = 0;
  for (const Candidate& c : candidates) {
    for (Trait t : kAllTraits) {
      if (c.association[index(t)] == 0.0) continue;
      patterns.push_back(
          PatternCorrelation{std::string(c.token), t, c.association[index(t)]});
      ++added;
    }
  }
  return PatternExtraction{model.with_patterns(std::move(patterns)), kept,
                           added, false};
}

PatternExtraction extract_patterns(std::span<const AuthorGroup> groups,
                                   const CorrelationModel& model,
                                   const PipelineConfig& cfg) {
  return extract_patterns(prepare_corpus(groups), model, cfg);
}

}  // namespace traitscan
