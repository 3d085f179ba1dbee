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

#include "traitscan/trait.h"

#include <algorithm>
#include <stdexcept>

namespace traitscan {

namespace {

constexpr std::array<std::string_view, kTraitCount> kTraitCodes = {
    "ext", "emo", "agr", "con", "ope"};

}  // namespace

std::string_view trait_code(Trait t) { return kTraitCodes[index(t)]; }

std::optional<Trait> trait_from_code(std::string_view code) {
  for (Trait t : kAllTraits) {
    if (kTraitCodes[index(t)] == code) return t;
  }
  return std::nullopt;
}

std::optional<TraitLabel> trait_label_from_char(char c) {
  switch (c) {
    case 'y':
      return TraitLabel::kPositive;
    case 'n':
      return TraitLabel::kNegative;
    case 'o':
      return TraitLabel::kOmitted;
    default:
      return std::nullopt;
  }
}

PersonalityLabel::PersonalityLabel() { labels_.fill(TraitLabel::kOmitted); }

PersonalityLabel PersonalityLabel::parse(std::string_view text) {
  if (text.size() != kTraitCount) {
    throw std::invalid_argument("personality label must have 5 characters: '" +
                                std::string(text) + "'");
  }
  PerTrait<TraitLabel> labels;
  for (std::size_t i = 0; i < kTraitCount; ++i) {
    auto l = trait_label_from_char(text[i]);
    if (!l) {
      throw std::invalid_argument("invalid character in personality label '" +
                                  std::string(text) + "'");
    }
    labels[i] = *l;
  }
  return PersonalityLabel(labels);
}

bool PersonalityLabel::contains(TraitLabel l) const {
  return std::find(labels_.begin(), labels_.end(), l) != labels_.end();
}

std::string PersonalityLabel::str() const {
  std::string out(kTraitCount, 'o');
  for (std::size_t i = 0; i < kTraitCount; ++i) out[i] = to_char(labels_[i]);
  return out;
}

}  // namespace traitscan
