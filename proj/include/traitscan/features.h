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

// Language-independent surface features of a text.
//
// Every count feature is divided by the token count so that short and long
// texts are comparable. Tokens are maximal runs of Unicode letters, decimal
// digits and combining marks, case-folded.

#ifndef TRAITSCAN_FEATURES_H_
#define TRAITSCAN_FEATURES_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace traitscan {

enum class Feature : std::uint8_t {
  kPunctuation = 0,    // ap
  kExclamation = 1,    // em
  kNumbers = 2,        // nb
  kParentheses = 3,    // pa
  kQuestionMarks = 4,  // qm
  kQuotes = 5,         // qt
  kTypeToken = 6,      // tt
  kWordFrequency = 7,  // wf
};

inline constexpr std::size_t kFeatureCount = 8;

inline constexpr std::array<Feature, kFeatureCount> kAllFeatures = {
    Feature::kPunctuation,   Feature::kExclamation, Feature::kNumbers,
    Feature::kParentheses,   Feature::kQuestionMarks, Feature::kQuotes,
    Feature::kTypeToken,     Feature::kWordFrequency};

constexpr std::size_t index(Feature f) { return static_cast<std::size_t>(f); }

std::string_view feature_code(Feature f);
std::optional<Feature> feature_from_code(std::string_view code);

struct FeatureVector {
  std::array<double, kFeatureCount> values{};

  double operator[](Feature f) const { return values[index(f)]; }
  double& operator[](Feature f) { return values[index(f)]; }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// Token counts over a corpus; stands in for an external word-frequency norm.
class FrequencyTable {
 public:
  void add(std::string_view token, std::uint64_t n = 1);
  std::uint64_t count(std::string_view token) const;
  std::uint64_t total_tokens() const { return total_; }
  std::size_t distinct_tokens() const { return counts_.size(); }
  bool empty() const { return total_ == 0; }

  // Tokens in byte order.
  std::vector<std::pair<std::string, std::uint64_t>> sorted_entries() const;

  friend bool operator==(const FrequencyTable&,
                         const FrequencyTable&) = default;

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_map<std::string, std::uint64_t, Hash, std::equal_to<>>
      counts_;
  std::uint64_t total_ = 0;
};

std::vector<std::string> tokenize(std::string_view text);

FrequencyTable build_frequency_table(std::span<const std::string> texts);

FeatureVector extract_features(std::string_view text,
                               const FrequencyTable& freq);
// Same as above with tokens already computed by tokenize(text).
FeatureVector extract_features(std::string_view text,
                               std::span<const std::string> tokens,
                               const FrequencyTable& freq);

// `token<TAB>count` lines in byte order, then `<TOTAL><TAB>n`.
void dump_frequency_table(const FrequencyTable& table, std::ostream& out);
// Throws ParseError on malformed lines or a total that disagrees with the
// sum of counts.
FrequencyTable load_frequency_table(std::istream& in);

}  // namespace traitscan

#endif  // TRAITSCAN_FEATURES_H_
