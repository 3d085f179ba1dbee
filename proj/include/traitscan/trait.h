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

// Big Five trait identifiers and the 5-character y/n/o label encoding.

#ifndef TRAITSCAN_TRAIT_H_
#define TRAITSCAN_TRAIT_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace traitscan {

// Ordinals match the character position in a rendered label.
enum class Trait : std::uint8_t {
  kExtraversion = 0,
  kEmotionalStability = 1,
  kAgreeableness = 2,
  kConscientiousness = 3,
  kOpenness = 4,
};

inline constexpr std::size_t kTraitCount = 5;

inline constexpr std::array<Trait, kTraitCount> kAllTraits = {
    Trait::kExtraversion, Trait::kEmotionalStability, Trait::kAgreeableness,
    Trait::kConscientiousness, Trait::kOpenness};

template <typename T>
using PerTrait = std::array<T, kTraitCount>;

constexpr std::size_t index(Trait t) { return static_cast<std::size_t>(t); }

// Three-letter column code: ext, emo, agr, con, ope.
std::string_view trait_code(Trait t);
std::optional<Trait> trait_from_code(std::string_view code);

enum class TraitLabel : char {
  kPositive = 'y',
  kNegative = 'n',
  kOmitted = 'o',
};

constexpr char to_char(TraitLabel l) { return static_cast<char>(l); }
std::optional<TraitLabel> trait_label_from_char(char c);

// A label such as "ynoon": one pole (or omission) per trait.
class PersonalityLabel {
 public:
  // All traits omitted.
  PersonalityLabel();
  explicit PersonalityLabel(const PerTrait<TraitLabel>& labels)
      : labels_(labels) {}

  // Throws std::invalid_argument unless `text` matches [yno]{5}.
  static PersonalityLabel parse(std::string_view text);

  TraitLabel operator[](Trait t) const { return labels_[index(t)]; }
  TraitLabel& operator[](Trait t) { return labels_[index(t)]; }

  bool contains(TraitLabel l) const;
  std::string str() const;

  friend bool operator==(const PersonalityLabel&,
                         const PersonalityLabel&) = default;

 private:
  PerTrait<TraitLabel> labels_;
};

}  // namespace traitscan

#endif  // TRAITSCAN_TRAIT_H_
