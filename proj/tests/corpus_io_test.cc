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

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "traitscan/corpus_io.h"

namespace traitscan {
namespace {

std::vector<std::string> authors_of(const std::vector<AuthorGroup>& groups) {
  std::vector<std::string> out;
  for (const auto& g : groups) out.push_back(g.author_id);
  return out;
}

std::vector<CorpusRecord> records(
    std::initializer_list<std::pair<const char*, const char*>> pairs) {
  std::vector<CorpusRecord> out;
  for (const auto& [a, t] : pairs) out.push_back(CorpusRecord{a, t});
  return out;
}

TEST_CASE("parse_corpus: single line") {
  const auto r = parse_corpus("alice\thello world\n");
  REQUIRE(r.size() == 1);
  CHECK(r[0] == CorpusRecord{"alice", "hello world"});
}

TEST_CASE("parse_corpus: empty stream") {
  CHECK(parse_corpus("").empty());
  std::istringstream in("");
  CHECK(parse_corpus(in).empty());
}

TEST_CASE("parse_corpus: input order preserved") {
  const auto r = parse_corpus("alice\ta\nbob\tb\nalice\tc\n");
  REQUIRE(r.size() == 3);
  CHECK(r[0].author_id == "alice");
  CHECK(r[1].author_id == "bob");
  CHECK(r[2].author_id == "alice");
  CHECK(r[2].text == "c");
}

TEST_CASE("parse_corpus: CR stripped, blank lines skipped, no final newline") {
  const auto r = parse_corpus("a\tx\r\n\n   \r\nb\ty");
  REQUIRE(r.size() == 2);
  CHECK(r[0].text == "x");
  CHECK(r[1] == CorpusRecord{"b", "y"});
}

TEST_CASE("parse_corpus: empty text is kept") {
  const auto r = parse_corpus("a\t\n");
  REQUIRE(r.size() == 1);
  CHECK(r[0].text.empty());
}

TEST_CASE("parse_corpus: tab errors carry the line number") {
  for (const char* bad : {"a\tb\nno tab here\n", "a\tb\nx\ty\tz\n"}) {
    try {
      parse_corpus(bad);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
  CHECK_THROWS_AS(parse_corpus("\ttext\n"), ParseError);
}

TEST_CASE("parse_corpus: invalid UTF-8 carries the byte offset") {
  // Line 2 starts at offset 4; the stray continuation byte is at 4 + 2.
  const std::string data = "a\tb\nc\t\x80x\n";
  try {
    parse_corpus(data);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.byte_offset() == 6);
  }
  CHECK_THROWS_AS(parse_corpus("a\t\xC3\n"), ParseError);  // truncated
  CHECK_NOTHROW(parse_corpus("a\tC'\xC3\xA8\n"));
}

TEST_CASE("write then parse round-trips random records") {
  std::mt19937 rng(7);
  const std::string alphabet = "ab c!?\"()'.,\xC3\xA8";
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<CorpusRecord> recs;
    const int n = static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      CorpusRecord r;
      r.author_id = "u" + std::to_string(rng() % 4);
      const int len = 1 + static_cast<int>(rng() % 12);
      for (int j = 0; j < len; ++j) {
        // Two-byte characters are appended whole.
        std::size_t k = rng() % (alphabet.size() - 1);
        if (k == alphabet.size() - 2) {
          r.text += alphabet.substr(k, 2);
        } else {
          r.text += alphabet[k];
        }
      }
      if (r.text.find_first_not_of(" ") == std::string::npos) r.text += "x";
      recs.push_back(r);
    }
    std::ostringstream out;
    write_corpus(recs, out);
    CHECK(parse_corpus(out.str()) == recs);
  }
}

TEST_CASE("write_corpus rejects unrepresentable records") {
  std::ostringstream out;
  const std::vector<CorpusRecord> tab{{"a", "x\ty"}};
  CHECK_THROWS_AS(write_corpus(tab, out), std::invalid_argument);
  const std::vector<CorpusRecord> empty_author{{"", "x"}};
  CHECK_THROWS_AS(write_corpus(empty_author, out), std::invalid_argument);
}

TEST_CASE("deduplicate_and_group: duplicates removed, first kept") {
  const auto g = deduplicate_and_group(
      records({{"alice", "a"}, {"alice", "a"}, {"alice", "b"}}));
  REQUIRE(g.size() == 1);
  CHECK(g[0].texts == std::vector<std::string>{"a", "b"});
  CHECK(g[0].positions == std::vector<std::size_t>{0, 2});
}

TEST_CASE("deduplicate_and_group: more texts first, ties by first appearance") {
  CHECK(authors_of(deduplicate_and_group(
            records({{"alice", "a"}, {"bob", "x"}, {"bob", "y"}}))) ==
        std::vector<std::string>{"bob", "alice"});
  CHECK(authors_of(deduplicate_and_group(records(
            {{"alice", "a"}, {"alice", "b"}, {"bob", "x"}, {"bob", "y"}}))) ==
        std::vector<std::string>{"alice", "bob"});
}

TEST_CASE("deduplicate_and_group: same text under different authors is kept") {
  const auto g =
      deduplicate_and_group(records({{"a", "same"}, {"b", "same"}}));
  REQUIRE(g.size() == 2);
}

TEST_CASE("deduplicate_and_group properties on random corpora") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<CorpusRecord> recs;
    const int n = static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) {
      recs.push_back(CorpusRecord{"a" + std::to_string(rng() % 5),
                                  "t" + std::to_string(rng() % 6)});
    }
    const auto groups = deduplicate_and_group(recs);
    std::size_t total = 0;
    bool had_duplicates = false;
    for (const auto& g : groups) {
      CHECK_FALSE(g.texts.empty());
      total += g.texts.size();
    }
    for (std::size_t i = 0; i < recs.size() && !had_duplicates; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (recs[i] == recs[j]) had_duplicates = true;
      }
    }
    CHECK(total <= recs.size());
    CHECK((total == recs.size()) == !had_duplicates);
    for (std::size_t i = 1; i < groups.size(); ++i) {
      CHECK(groups[i - 1].texts.size() >= groups[i].texts.size());
    }

    // Regrouping the flattened result, in input order, changes nothing.
    std::vector<std::pair<std::size_t, CorpusRecord>> flat;
    for (const auto& g : groups) {
      for (std::size_t i = 0; i < g.texts.size(); ++i) {
        flat.emplace_back(g.positions[i], CorpusRecord{g.author_id, g.texts[i]});
      }
    }
    std::sort(flat.begin(), flat.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<CorpusRecord> again;
    for (auto& [pos, r] : flat) again.push_back(r);
    const auto regrouped = deduplicate_and_group(again);
    REQUIRE(regrouped.size() == groups.size());
    for (std::size_t i = 0; i < groups.size(); ++i) {
      CHECK(regrouped[i].author_id == groups[i].author_id);
      CHECK(regrouped[i].texts == groups[i].texts);
    }
  }
}

TEST_CASE("split_by_lines") {
  CHECK(split_by_lines(records({{"alice", "s1\\ns2"}})) ==
        records({{"alice", "s1"}, {"alice", "s2"}}));
  CHECK(split_by_lines(records({{"alice", "s1"}})) ==
        records({{"alice", "s1"}}));
  CHECK(split_by_lines(records({{"alice", "s1\\n\\ns2"}})).size() == 2);
  CHECK(split_by_lines(records({{"alice", "\\n  \\n"}})).empty());
}

TEST_CASE("write_author_results") {
  AuthorResult r;
  r.author_id = "alice";
  r.label = PersonalityLabel::parse("ynoon");
  r.avg_confidence = 0.8;
  r.text_count = 4;
  r.variability = 0.2;
  std::ostringstream out;
  write_author_results(std::vector<AuthorResult>{r}, out);
  CHECK(out.str() == "alice\tynoon\t0.800000\t4\t0.200000\n");

  std::ostringstream empty;
  write_author_results({}, empty);
  CHECK(empty.str().empty());

  r.label = PersonalityLabel();
  std::ostringstream omitted;
  write_author_results(std::vector<AuthorResult>{r}, omitted);
  CHECK(omitted.str().substr(6, 6) == "ooooo\t");
}

TEST_CASE("write_annotated_texts") {
  std::ostringstream out;
  write_annotated_texts(
      std::vector<TextAnnotation>{
          {{"alice", "hi"}, PersonalityLabel::parse("ynoon")},
          {{"bob", "yo"}, PersonalityLabel::parse("nnnnn")}},
      out);
  CHECK(out.str() == "alice\thi\tynoon\nbob\tyo\tnnnnn\n");
  std::ostringstream empty;
  write_annotated_texts({}, empty);
  CHECK(empty.str().empty());
}

TEST_CASE("read_label_file accepts gold files and author results") {
  std::istringstream in("a\tynyny\nb\tnnnnn\t0.800000\t4\t0.200000\n");
  const LabelMap labels = read_label_file(in);
  REQUIRE(labels.size() == 2);
  CHECK(labels.at("a").str() == "ynyny");
  CHECK(labels.at("b").str() == "nnnnn");

  std::istringstream dup("a\tyyyyy\na\tnnnnn\n");
  CHECK_THROWS_AS(read_label_file(dup), ParseError);
  std::istringstream bad("a\tyyyy\n");
  CHECK_THROWS_AS(read_label_file(bad), ParseError);
}

}  // namespace
}  // namespace traitscan
