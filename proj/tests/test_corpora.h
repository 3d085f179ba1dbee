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

// Random corpora and label maps shared by the unit and acceptance suites.

#ifndef TRAITSCAN_TESTS_TEST_CORPORA_H_
#define TRAITSCAN_TESTS_TEST_CORPORA_H_

#include <algorithm>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "traitscan/corpus_io.h"
#include "traitscan/trait.h"

namespace traitscan::testing {

inline std::string random_text(std::mt19937_64& rng) {
  static const std::vector<std::string> words = {
      "the", "a", "cat", "dog", "sun", "rain", "io", "tu", "casa", "mare",
      "12", "7", "2024", "caff\xC3\xA8", "\xC3\xA9t\xC3\xA9", "ok", "why",
      "never", "always", "we"};
  static const std::vector<std::string> marks = {
      ",", ".", "!", "?", "\"", "'", "(", ")", "[", "]", "...", "!!", "?!",
      "\xC2\xAB", "\xC2\xBB", ";", ":", "-"};
  std::string text;
  const std::size_t length = 1 + rng() % 14;
  for (std::size_t i = 0; i < length; ++i) {
    if (!text.empty()) text += ' ';
    text += words[rng() % words.size()];
    if (rng() % 3 == 0) text += marks[rng() % marks.size()];
  }
  return text;
}

// `authors` authors with 1..max_texts texts each, interleaved randomly.
inline std::vector<CorpusRecord> random_records(std::mt19937_64& rng,
                                                std::size_t authors,
                                                std::size_t max_texts) {
  std::vector<CorpusRecord> records;
  for (std::size_t a = 0; a < authors; ++a) {
    const std::size_t texts = 1 + rng() % max_texts;
    for (std::size_t t = 0; t < texts; ++t) {
      records.push_back(
          CorpusRecord{"author" + std::to_string(a), random_text(rng)});
    }
  }
  std::shuffle(records.begin(), records.end(), rng);
  return records;
}

inline PersonalityLabel random_label(std::mt19937_64& rng,
                                     bool allow_omitted) {
  static const TraitLabel all[] = {TraitLabel::kPositive,
                                   TraitLabel::kNegative, TraitLabel::kOmitted};
  PerTrait<TraitLabel> labels;
  for (auto& l : labels) l = all[rng() % (allow_omitted ? 3 : 2)];
  return PersonalityLabel(labels);
}

}  // namespace traitscan::testing

#endif  // TRAITSCAN_TESTS_TEST_CORPORA_H_
