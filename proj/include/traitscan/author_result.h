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

#ifndef TRAITSCAN_AUTHOR_RESULT_H_
#define TRAITSCAN_AUTHOR_RESULT_H_

#include <cstddef>
#include <string>

#include "traitscan/trait.h"

namespace traitscan {

// Generalized hypothesis for one author, produced by majority vote over the
// labels of the author's texts.
struct AuthorResult {
  std::string author_id;
  PersonalityLabel label;
  // Count of the winning label per trait.
  PerTrait<std::size_t> majority_count{};
  // majority_count / text_count.
  PerTrait<double> trait_confidence{};
  double avg_confidence = 0.0;
  std::size_t text_count = 0;
  // avg_confidence / text_count.
  double variability = 0.0;

  friend bool operator==(const AuthorResult&, const AuthorResult&) = default;
};

}  // namespace traitscan

#endif  // TRAITSCAN_AUTHOR_RESULT_H_
