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

// Signed feature/trait correlations that drive unsupervised labeling.
//
// A correlation fires (contributes its r to the trait score) only when it is
// significant. Learned token patterns extend the feature table; they always
// fire at full strength when their token occurs in a text.

#ifndef TRAITSCAN_CORRELATION_MODEL_H_
#define TRAITSCAN_CORRELATION_MODEL_H_

#include <array>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "traitscan/features.h"
#include "traitscan/trait.h"

namespace traitscan {

// kWeak is p < .05 (one star), kStrong is p < .01 (two stars).
enum class Significance : std::uint8_t { kNone = 0, kWeak = 1, kStrong = 2 };

struct Correlation {
  Feature feature = Feature::kPunctuation;
  Trait trait = Trait::kExtraversion;
  double r = 0.0;
  Significance significance = Significance::kNone;

  bool fires() const { return significance != Significance::kNone; }

  friend bool operator==(const Correlation&, const Correlation&) = default;
};

// Association of a case-folded token with a trait pole, learned from
// high-confidence labels.
struct PatternCorrelation {
  std::string token;
  Trait trait = Trait::kExtraversion;
  double association = 0.0;

  friend bool operator==(const PatternCorrelation&,
                         const PatternCorrelation&) = default;
};

class CorrelationModel {
 public:
  // Adds one full row (one cell per trait). Throws std::invalid_argument if
  // the feature already has a row or |r| > 1.
  void add_row(Feature feature, const PerTrait<std::pair<double, Significance>>&
                                    cells);

  bool has_feature(Feature f) const { return rows_[index(f)].has_value(); }
  std::optional<Correlation> lookup(Feature f, Trait t) const;
  // Rows in feature order.
  std::vector<Correlation> correlations() const;

  const std::vector<PatternCorrelation>& patterns() const { return patterns_; }
  CorrelationModel with_patterns(std::vector<PatternCorrelation> patterns) const;

  // Weak cells demoted to kNone.
  CorrelationModel strong_only() const;
  // Every r of `f` negated; used to flip the direction of the tt feature.
  CorrelationModel with_inverted_signs(Feature f) const;
  // Every r (patterns included) multiplied by `factor`.
  CorrelationModel scaled(double factor) const;

  friend bool operator==(const CorrelationModel&,
                         const CorrelationModel&) = default;

 private:
  using Row = PerTrait<Correlation>;
  std::array<std::optional<Row>, kFeatureCount> rows_;
  std::vector<PatternCorrelation> patterns_;
};

// The built-in eight-feature table.
CorrelationModel default_model();

// Header `feature ext emo agr con ope`, then one row per feature with cells
// such as `-.08**`, `.05*`, `-.04`. Throws ParseError with a line number.
CorrelationModel load_model(std::istream& in);
// Writes the feature table in the format load_model reads. Patterns are not
// part of this format; see dump_patterns.
void dump_model(const CorrelationModel& model, std::ostream& out);

// `token<TAB>trait<TAB>association` after a `pattern trait association`
// header.
void dump_patterns(std::span<const PatternCorrelation> patterns,
                   std::ostream& out);
std::vector<PatternCorrelation> load_patterns(std::istream& in);

// The (trait, r) pairs a firing feature contributes: significant cells only.
// Throws std::out_of_range if the model has no row for `feature`.
std::vector<std::pair<Trait, double>> firing_contributions(
    const CorrelationModel& model, Feature feature);

}  // namespace traitscan

#endif  // TRAITSCAN_CORRELATION_MODEL_H_
