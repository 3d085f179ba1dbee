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

// Reading and writing the tab-separated corpus, gold-label and result files.
//
// Corpus lines are `author<TAB>text`, UTF-8, LF-terminated (a trailing CR is
// stripped). Blank lines are skipped.

#ifndef TRAITSCAN_CORPUS_IO_H_
#define TRAITSCAN_CORPUS_IO_H_

#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "traitscan/author_result.h"
#include "traitscan/trait.h"

namespace traitscan {

// Raised for malformed input. `line()` is 1-based (0 if not line-related);
// `byte_offset()` is the absolute offset of an invalid UTF-8 sequence.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line,
             std::size_t byte_offset = 0)
      : std::runtime_error(what), line_(line), byte_offset_(byte_offset) {}

  std::size_t line() const { return line_; }
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t line_;
  std::size_t byte_offset_;
};

struct CorpusRecord {
  std::string author_id;
  std::string text;

  friend bool operator==(const CorpusRecord&, const CorpusRecord&) = default;
};

// The deduplicated texts of one author. `positions[i]` is the index of
// `texts[i]` in the record sequence the group was built from; the pipeline
// processes texts in ascending position so that group order never affects
// labels.
struct AuthorGroup {
  std::string author_id;
  std::vector<std::string> texts;
  std::vector<std::size_t> positions;

  friend bool operator==(const AuthorGroup&, const AuthorGroup&) = default;
};

struct TextAnnotation {
  CorpusRecord record;
  PersonalityLabel label;

  friend bool operator==(const TextAnnotation&,
                         const TextAnnotation&) = default;
};

std::vector<CorpusRecord> parse_corpus(std::istream& in);
std::vector<CorpusRecord> parse_corpus(std::string_view data);

// Writes records in the format parse_corpus reads. Throws
// std::invalid_argument for records that cannot be represented (empty
// author, tab or newline in a field).
void write_corpus(std::span<const CorpusRecord> records, std::ostream& out);

// Drops byte-identical repeats within an author (first occurrence kept) and
// orders groups by descending text count, ties by first appearance.
std::vector<AuthorGroup> deduplicate_and_group(
    std::span<const CorpusRecord> records);

// Splits texts on the two-character escape `\n` and drops blank segments.
std::vector<CorpusRecord> split_by_lines(std::span<const CorpusRecord> records);

void write_author_results(std::span<const AuthorResult> results,
                          std::ostream& out);
void write_annotated_texts(std::span<const TextAnnotation> annotations,
                           std::ostream& out);

using LabelMap = std::map<std::string, PersonalityLabel, std::less<>>;

// Reads `author<TAB>label[<TAB>...]`; extra columns are ignored so that the
// author results file can be read back as predictions. Duplicate authors
// are an error.
LabelMap read_label_file(std::istream& in);

}  // namespace traitscan

#endif  // TRAITSCAN_CORPUS_IO_H_
