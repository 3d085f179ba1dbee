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

// Evaluation of author labels against binary gold labels.
//
// Each (gold author, trait) cell lands in exactly one bucket: a prediction
// equal to the gold pole is a true positive, the opposite pole a false
// positive, and an omitted ('o') or missing prediction a false negative.

#ifndef TRAITSCAN_SCORER_H_
#define TRAITSCAN_SCORER_H_

#include <cstddef>
#include <ostream>

#include "traitscan/corpus_io.h"
#include "traitscan/trait.h"

namespace traitscan {

struct TraitMetrics {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  // precision is 0 when tp + fp = 0; recall is 1 when fn = 0 (nothing was
  // missed), so a prediction set without 'o' always has recall 1.
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static TraitMetrics from_counts(std::size_t tp, std::size_t fp,
                                  std::size_t fn);

  friend bool operator==(const TraitMetrics&, const TraitMetrics&) = default;
};

struct Report {
  PerTrait<TraitMetrics> per_trait{};
  // Unweighted means over the five traits.
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  friend bool operator==(const Report&, const Report&) = default;
};

// Throws std::invalid_argument if a gold label contains 'o'. Predicted
// authors absent from gold are ignored; gold authors absent from `pred`
// count as false negatives.
Report score(const LabelMap& pred, const LabelMap& gold);

// Mean of score(all "yyyyy") and score(all "nnnnn"). The per-trait counts of
// the result are the sums over both runs; every rate is the mean of the two
// runs' rates. Throws std::invalid_argument on empty or non-binary gold.
Report majority_baseline(const LabelMap& gold);

// Header `trait p r f`, one row per trait, then an `avg` row; 6 decimals.
void write_report(const Report& report, std::ostream& out);

}  // namespace traitscan

#endif  // TRAITSCAN_SCORER_H_
