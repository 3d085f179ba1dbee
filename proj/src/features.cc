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

#include "traitscan/features.h"

#include <algorithm>
#include <charconv>
#include <iterator>
#include <unordered_set>

#include <fmt/format.h>
#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "traitscan/corpus_io.h"

namespace traitscan {

namespace {

constexpr std::array<std::string_view, kFeatureCount> kFeatureCodes = {
    "ap", "em", "nb", "pa", "qm", "qt", "tt", "wf"};

constexpr std::string_view kTotalMarker = "<TOTAL>";

bool is_token_char(UChar32 c) {
  return (U_GET_GC_MASK(c) & (U_GC_L_MASK | U_GC_ND_MASK | U_GC_M_MASK)) != 0;
}

bool is_quote(UChar32 c) {
  switch (c) {
    case 0x0022:  // "
    case 0x0027:  // '
    case 0x00AB:  // «
    case 0x00BB:  // »
    case 0x2018:
    case 0x2019:
    case 0x201C:
    case 0x201D:
      return true;
    default:
      return false;
  }
}

bool is_bracket(UChar32 c) {
  return c == '(' || c == ')' || c == '[' || c == ']' || c == '{' || c == '}';
}

// Decodes `text` code point by code point; invalid sequences yield c < 0.
template <typename Fn>
void for_each_code_point(std::string_view text, Fn&& fn) {
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    fn(c);
  }
}

bool is_digit_token(std::string_view token) {
  bool all_digits = !token.empty();
  for_each_code_point(token, [&](UChar32 c) {
    if (c < 0 || u_charType(c) != U_DECIMAL_DIGIT_NUMBER) all_digits = false;
  });
  return all_digits;
}

}  // namespace

std::string_view feature_code(Feature f) { return kFeatureCodes[index(f)]; }

std::optional<Feature> feature_from_code(std::string_view code) {
  for (Feature f : kAllFeatures) {
    if (kFeatureCodes[index(f)] == code) return f;
  }
  return std::nullopt;
}

void FrequencyTable::add(std::string_view token, std::uint64_t n) {
  auto it = counts_.find(token);
  if (it == counts_.end()) {
    counts_.emplace(std::string(token), n);
  } else {
    it->second += n;
  }
  total_ += n;
}

std::uint64_t FrequencyTable::count(std::string_view token) const {
  auto it = counts_.find(token);
  return it == counts_.end() ? 0 : it->second;
}

std::vector<std::pair<std::string, std::uint64_t>>
FrequencyTable::sorted_entries() const {
  std::vector<std::pair<std::string, std::uint64_t>> entries(counts_.begin(),
                                                             counts_.end());
  std::sort(entries.begin(), entries.end());
  return entries;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for_each_code_point(text, [&](UChar32 c) {
    if (c < 0 || !is_token_char(c)) {
      flush();
      return;
    }
    const UChar32 folded = u_foldCase(c, U_FOLD_CASE_DEFAULT);
    char buf[U8_MAX_LENGTH];
    int32_t n = 0;
    U8_APPEND_UNSAFE(buf, n, folded);
    current.append(buf, static_cast<std::size_t>(n));
  });
  flush();
  return tokens;
}

FrequencyTable build_frequency_table(std::span<const std::string> texts) {
  FrequencyTable table;
  for (const std::string& text : texts) {
    for (const std::string& token : tokenize(text)) table.add(token);
  }
  return table;
}

FeatureVector extract_features(std::string_view text,
                               const FrequencyTable& freq) {
  const std::vector<std::string> tokens = tokenize(text);
  return extract_features(text, tokens, freq);
}

FeatureVector extract_features(std::string_view text,
                               std::span<const std::string> tokens,
                               const FrequencyTable& freq) {
  FeatureVector v;
  if (tokens.empty()) return v;

  std::size_t punctuation = 0, exclamation = 0, question = 0, quotes = 0,
              brackets = 0;
  for_each_code_point(text, [&](UChar32 c) {
    if (c < 0) return;
    if (U_GET_GC_MASK(c) & U_GC_P_MASK) ++punctuation;
    if (c == '!') ++exclamation;
    if (c == '?') ++question;
    if (is_quote(c)) ++quotes;
    if (is_bracket(c)) ++brackets;
  });

  std::size_t numbers = 0;
  double frequency_sum = 0.0;
  std::unordered_set<std::string_view> distinct;
  for (const std::string& token : tokens) {
    if (is_digit_token(token)) ++numbers;
    distinct.insert(token);
    if (!freq.empty()) {
      frequency_sum += static_cast<double>(freq.count(token)) /
                       static_cast<double>(freq.total_tokens());
    }
  }

  const auto n = static_cast<double>(tokens.size());
  v[Feature::kPunctuation] = static_cast<double>(punctuation) / n;
  v[Feature::kExclamation] = static_cast<double>(exclamation) / n;
  v[Feature::kNumbers] = static_cast<double>(numbers) / n;
  v[Feature::kParentheses] = static_cast<double>(brackets) / n;
  v[Feature::kQuestionMarks] = static_cast<double>(question) / n;
  v[Feature::kQuotes] = static_cast<double>(quotes) / n;
  v[Feature::kTypeToken] = static_cast<double>(distinct.size()) / n;
  v[Feature::kWordFrequency] = frequency_sum / n;
  return v;
}

void dump_frequency_table(const FrequencyTable& table, std::ostream& out) {
  for (const auto& [token, count] : table.sorted_entries()) {
    out << token << '\t' << count << '\n';
  }
  out << kTotalMarker << '\t' << table.total_tokens() << '\n';
  if (!out) throw std::runtime_error("failed writing frequency table");
}

FrequencyTable load_frequency_table(std::istream& in) {
  FrequencyTable table;
  std::optional<std::uint64_t> declared_total;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (declared_total) {
      throw ParseError(
          fmt::format("line {}: data after {} line", line_number, kTotalMarker),
          line_number);
    }
    const std::size_t tab = line.find('\t');
    std::uint64_t count = 0;
    const char* first = line.data() + (tab == std::string::npos ? 0 : tab + 1);
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, count);
    if (tab == std::string::npos || tab == 0 || ec != std::errc() ||
        ptr != last || first == last) {
      throw ParseError(
          fmt::format("line {}: expected token<TAB>count", line_number),
          line_number);
    }
    std::string_view token(line.data(), tab);
    if (token == kTotalMarker) {
      declared_total = count;
    } else {
      if (table.count(token) != 0) {
        throw ParseError(fmt::format("line {}: duplicate token '{}'",
                                     line_number, token),
                         line_number);
      }
      table.add(token, count);
    }
  }
  if (!declared_total) {
    throw ParseError(fmt::format("missing {} line", kTotalMarker), line_number);
  }
  if (*declared_total != table.total_tokens()) {
    throw ParseError(fmt::format("{} is {} but counts sum to {}", kTotalMarker,
                                 *declared_total, table.total_tokens()),
                     line_number);
  }
  return table;
}

}  // namespace traitscan
