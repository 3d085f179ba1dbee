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

#include "traitscan/scorer.h"

#include <stdexcept>

#include <fmt/format.h>

namespace traitscan {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

void check_binary(const LabelMap& gold) {
  for (const auto& [author, label] : gold) {
    if (label.contains(TraitLabel::kOmitted)) {
      throw std::invalid_argument("gold label for '" + author +
                                  "' contains 'o'");
    }
  }
}

void fill_averages(Report& report) {
  double p = 0.0, r = 0.0, f = 0.0;
  for (const TraitMetrics& m : report.per_trait) {
    p += m.precision;
    r += m.recall;
    f += m.f1;
  }
  report.precision = p / kTraitCount;
  report.recall = r / kTraitCount;
  report.f1 = f / kTraitCount;
}

Report score_constant(TraitLabel pole, const LabelMap& gold) {
  LabelMap pred;
  const PersonalityLabel constant(PerTrait<TraitLabel>{pole, pole, pole, pole,
                                                       pole});
  for (const auto& [author, label] : gold) pred.emplace(author, constant);
  return score(pred, gold);
}

}  // namespace

TraitMetrics TraitMetrics::from_counts(std::size_t tp, std::size_t fp,
                                       std::size_t fn) {
  TraitMetrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.precision = ratio(tp, tp + fp);
  // No missed cells means full recall, even when every prediction was wrong.
  m.recall = fn == 0 ? 1.0 : ratio(tp, tp + fn);
  const double sum = m.precision + m.recall;
  m.f1 = sum == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / sum;
  return m;
}

Report score(const LabelMap& pred, const LabelMap& gold) {
  check_binary(gold);
  PerTrait<std::size_t> tp{}, fp{}, fn{};
  for (const auto& [author, truth] : gold) {
    auto it = pred.find(author);
    for (Trait t : kAllTraits) {
      const std::size_t i = index(t);
      if (it == pred.end() || it->second[t] == TraitLabel::kOmitted) {
        ++fn[i];
      } else if (it->second[t] == truth[t]) {
        ++tp[i];
      } else {
        ++fp[i];
      }
    }
  }
  Report report;
  for (Trait t : kAllTraits) {
    const std::size_t i = index(t);
    report.per_trait[i] = TraitMetrics::from_counts(tp[i], fp[i], fn[i]);
  }
  fill_averages(report);
  return report;
}

Report majority_baseline(const LabelMap& gold) {
  if (gold.empty()) throw std::invalid_argument("gold labels are empty");
  check_binary(gold);
  const Report yes = score_constant(TraitLabel::kPositive, gold);
  const Report no = score_constant(TraitLabel::kNegative, gold);
  Report mean;
  for (std::size_t i = 0; i < kTraitCount; ++i) {
    const TraitMetrics& a = yes.per_trait[i];
    const TraitMetrics& b = no.per_trait[i];
    TraitMetrics& m = mean.per_trait[i];
    m.tp = a.tp + b.tp;
    m.fp = a.fp + b.fp;
    m.fn = a.fn + b.fn;
    m.precision = (a.precision + b.precision) / 2.0;
    m.recall = (a.recall + b.recall) / 2.0;
    m.f1 = (a.f1 + b.f1) / 2.0;
  }
  mean.precision = (yes.precision + no.precision) / 2.0;
  mean.recall = (yes.recall + no.recall) / 2.0;
  mean.f1 = (yes.f1 + no.f1) / 2.0;
  return mean;
}

void write_report(const Report& report, std::ostream& out) {
  out << "trait\tp\tr\tf\n";
  for (Trait t : kAllTraits) {
    const TraitMetrics& m = report.per_trait[index(t)];
    out << fmt::format("{}\t{:.6f}\t{:.6f}\t{:.6f}\n", trait_code(t),
                       m.precision, m.recall, m.f1);
  }
  out << fmt::format("avg\t{:.6f}\t{:.6f}\t{:.6f}\n", report.precision,
                     report.recall, report.f1);
  if (!out) throw std::runtime_error("failed writing report");
}

}  // namespace traitscan
