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

#include <doctest.h>

#include <cctype>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "traitscan/corpus_io.h"
#include "traitscan/features.h"

namespace traitscan {
namespace {

using Tokens = std::vector<std::string>;

// Test-only ASCII tokenizer used as an independent oracle for ASCII input.
Tokens ascii_tokens(const std::string& text) {
  Tokens out;
  std::string cur;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string random_ascii_text(std::mt19937& rng) {
  static const std::vector<std::string> pieces = {
      "a", "B", "cc", "a", "dd", "7", "42", " ", " ", " ", ",", ".", "!",
      "?", "\"", "'", "(", ")", "[", "]", "{", "}", "-", "$", "+"};
  std::string text;
  const int len = static_cast<int>(rng() % 20);
  for (int i = 0; i < len; ++i) text += pieces[rng() % pieces.size()];
  return text;
}

TEST_CASE("tokenize") {
  CHECK(tokenize("Hello, world!") == Tokens{"hello", "world"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("C'\xC3\xA8 1 gatto") == Tokens{"c", "\xC3\xA8", "1", "gatto"});
}

TEST_CASE("tokenize: non-ASCII letters, marks and digits") {
  // Decomposed e + combining grave stays one token.
  CHECK(tokenize("Cafe\xCC\x80!") == Tokens{"cafe\xCC\x80"});
  // "ÉCOLE" folds to "école".
  CHECK(tokenize("\xC3\x89" "COLE") == Tokens{"\xC3\xA9" "cole"});
  // Greek with a question mark lookalike (U+037E) as delimiter.
  CHECK(tokenize("\xCE\x91\xCE\xB2\xCD\xBE") == Tokens{"\xCE\xB1\xCE\xB2"});
  // Arabic-Indic digits.
  CHECK(tokenize("x \xD9\xA3\xD9\xA4") == Tokens{"x", "\xD9\xA3\xD9\xA4"});
}

TEST_CASE("tokenize agrees with an ASCII oracle on ASCII text") {
  std::mt19937 rng(3);
  for (int i = 0; i < 500; ++i) {
    const std::string text = random_ascii_text(rng);
    CHECK(tokenize(text) == ascii_tokens(text));
  }
}

TEST_CASE("extract_features: hand-counted example") {
  const FeatureVector v = extract_features("Hello, world!", FrequencyTable{});
  CHECK(v[Feature::kPunctuation] == 1.0);
  CHECK(v[Feature::kExclamation] == 0.5);
  CHECK(v[Feature::kQuestionMarks] == 0.0);
  CHECK(v[Feature::kQuotes] == 0.0);
  CHECK(v[Feature::kParentheses] == 0.0);
  CHECK(v[Feature::kNumbers] == 0.0);
  CHECK(v[Feature::kTypeToken] == 1.0);
  CHECK(v[Feature::kWordFrequency] == 0.0);
}

TEST_CASE("extract_features: empty text and punctuation-only text") {
  CHECK(extract_features("", FrequencyTable{}) == FeatureVector{});
  CHECK(extract_features("?!", FrequencyTable{}) == FeatureVector{});
}

TEST_CASE("extract_features: repeated token") {
  FrequencyTable freq;
  freq.add("a", 4);
  const FeatureVector v = extract_features("a a a a", freq);
  CHECK(v[Feature::kTypeToken] == 0.25);
  CHECK(v[Feature::kWordFrequency] == 1.0);
  for (Feature f : {Feature::kPunctuation, Feature::kExclamation,
                    Feature::kNumbers, Feature::kParentheses,
                    Feature::kQuestionMarks, Feature::kQuotes}) {
    CHECK(v[f] == 0.0);
  }
}

TEST_CASE("extract_features: quotes, brackets, numbers") {
  // 4 tokens; quotes " ' « » = 4, brackets ( ] { = 3; symbols $ + are not
  // punctuation; "12" is a number token, "x1" is not.
  const FeatureVector v = extract_features(
      "\"a' \xC2\xAB" "12\xC2\xBB (x1] {b $ +", FrequencyTable{});
  CHECK(v[Feature::kQuotes] == 1.0);
  CHECK(v[Feature::kParentheses] == 0.75);
  CHECK(v[Feature::kNumbers] == 0.25);
  CHECK(v[Feature::kPunctuation] == 7.0 / 4.0);
  // Curly quotes.
  const FeatureVector curly = extract_features(
      "\xE2\x80\x9Cw\xE2\x80\x9D \xE2\x80\x98z\xE2\x80\x99", FrequencyTable{});
  CHECK(curly[Feature::kQuotes] == 2.0);
}

TEST_CASE("build_frequency_table") {
  const FrequencyTable t = build_frequency_table(Tokens{"a b", "a"});
  CHECK(t.count("a") == 2);
  CHECK(t.count("b") == 1);
  CHECK(t.total_tokens() == 3);
  CHECK(build_frequency_table(Tokens{}).total_tokens() == 0);
  const FrequencyTable folded = build_frequency_table(Tokens{"A a"});
  CHECK(folded.count("a") == 2);
  CHECK(folded.distinct_tokens() == 1);
  CHECK(folded.total_tokens() == 2);
}

TEST_CASE("feature invariants on random text") {
  std::mt19937 rng(5);
  std::vector<std::string> texts;
  for (int i = 0; i < 300; ++i) texts.push_back(random_ascii_text(rng));
  const FrequencyTable freq = build_frequency_table(texts);
  for (const std::string& text : texts) {
    const FeatureVector v = extract_features(text, freq);
    CHECK(v == extract_features(text, freq));
    for (double x : v.values) {
      CHECK(std::isfinite(x));
      CHECK(x >= 0.0);
    }
    CHECK(v[Feature::kTypeToken] <= 1.0);
    CHECK(v[Feature::kWordFrequency] <= 1.0);
    if (tokenize(text).empty()) CHECK(v == FeatureVector{});
  }
}

TEST_CASE("self-concatenation halves tt and keeps the count features") {
  std::mt19937 rng(9);
  for (int i = 0; i < 300; ++i) {
    const std::string text = random_ascii_text(rng);
    if (tokenize(text).empty()) continue;
    const FeatureVector once = extract_features(text, FrequencyTable{});
    const FeatureVector twice =
        extract_features(text + " " + text, FrequencyTable{});
    CHECK(twice[Feature::kTypeToken] ==
          doctest::Approx(once[Feature::kTypeToken] / 2.0).epsilon(1e-12));
    for (Feature f : {Feature::kPunctuation, Feature::kExclamation,
                      Feature::kNumbers, Feature::kParentheses,
                      Feature::kQuestionMarks, Feature::kQuotes}) {
      CHECK(twice[f] == doctest::Approx(once[f]).epsilon(1e-12));
    }
  }
}

TEST_CASE("wf against a self-built table equals sum count^2 / (N * total)") {
  std::mt19937 rng(13);
  for (int i = 0; i < 300; ++i) {
    const std::string text = random_ascii_text(rng);
    const Tokens tokens = ascii_tokens(text);
    if (tokens.empty()) continue;
    std::map<std::string, double> counts;
    for (const auto& t : tokens) counts[t] += 1.0;
    double squares = 0.0;
    for (const auto& [t, c] : counts) squares += c * c;
    const double n = static_cast<double>(tokens.size());
    const double expected = squares / (n * n);  // total == N here

    const FrequencyTable freq = build_frequency_table(Tokens{text});
    CHECK(extract_features(text, freq)[Feature::kWordFrequency] ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("frequency table dump and load") {
  const FrequencyTable t = build_frequency_table(Tokens{"b a b", "c"});
  std::ostringstream out;
  dump_frequency_table(t, out);
  CHECK(out.str() == "a\t1\nb\t2\nc\t1\n<TOTAL>\t4\n");
  std::istringstream in(out.str());
  CHECK(load_frequency_table(in) == t);

  std::istringstream wrong_total("a\t1\n<TOTAL>\t2\n");
  CHECK_THROWS_AS(load_frequency_table(wrong_total), ParseError);
  std::istringstream no_total("a\t1\n");
  CHECK_THROWS_AS(load_frequency_table(no_total), ParseError);
  std::istringstream bad_count("a\tx\n<TOTAL>\t0\n");
  CHECK_THROWS_AS(load_frequency_table(bad_count), ParseError);
  std::istringstream dup("a\t1\na\t1\n<TOTAL>\t2\n");
  CHECK_THROWS_AS(load_frequency_table(dup), ParseError);
}

TEST_CASE("feature codes") {
  CHECK(feature_code(Feature::kWordFrequency) == "wf");
  CHECK(feature_from_code("qt") == Feature::kQuotes);
  CHECK_FALSE(feature_from_code("xx").has_value());
}

}  // namespace
}  // namespace traitscan
