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

#include "traitscan/corpus_io.h"

#include <algorithm>
#include <iterator>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include <fmt/format.h>
#include <unicode/utf8.h>

namespace traitscan {

namespace {

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\f\v") == std::string_view::npos;
}

// Returns the offset of the first invalid UTF-8 sequence, or npos.
std::size_t find_invalid_utf8(std::string_view s) {
  const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
  const auto length = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) return static_cast<std::size_t>(start);
  }
  return std::string_view::npos;
}

std::string read_all(std::istream& in) {
  std::string data{std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>()};
  if (in.bad()) throw std::runtime_error("failed reading input stream");
  return data;
}

// Calls fn(line_number, line, line_offset) for every line, CR stripped.
template <typename Fn>
void for_each_line(std::string_view data, Fn&& fn) {
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t end = data.find('\n', pos);
    if (end == std::string_view::npos) end = data.size();
    std::string_view line = data.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(++line_number, line, pos);
    pos = end + 1;
  }
}

void check_sink(const std::ostream& out) {
  if (!out) throw std::runtime_error("failed writing output");
}

}  // namespace

std::vector<CorpusRecord> parse_corpus(std::string_view data) {
  std::vector<CorpusRecord> records;
  for_each_line(data, [&](std::size_t line_number, std::string_view line,
                          std::size_t offset) {
    if (std::size_t bad = find_invalid_utf8(line); bad != std::string_view::npos) {
      throw ParseError(fmt::format("line {}: invalid UTF-8 at byte offset {}",
                                   line_number, offset + bad),
                       line_number, offset + bad);
    }
    if (is_blank(line)) return;
    const auto tabs = std::count(line.begin(), line.end(), '\t');
    if (tabs != 1) {
      throw ParseError(fmt::format("line {}: expected exactly one tab, found {}",
                                   line_number, tabs),
                       line_number);
    }
    const std::size_t tab = line.find('\t');
    if (tab == 0) {
      throw ParseError(fmt::format("line {}: empty author id", line_number),
                       line_number);
    }
    records.push_back(CorpusRecord{std::string(line.substr(0, tab)),
                                   std::string(line.substr(tab + 1))});
  });
  return records;
}

std::vector<CorpusRecord> parse_corpus(std::istream& in) {
  return parse_corpus(read_all(in));
}

void write_corpus(std::span<const CorpusRecord> records, std::ostream& out) {
  for (const CorpusRecord& r : records) {
    if (r.author_id.empty() ||
        r.author_id.find_first_of("\t\n\r") != std::string::npos ||
        r.text.find_first_of("\t\n") != std::string::npos) {
      throw std::invalid_argument("record for author '" + r.author_id +
                                  "' cannot be written as a corpus line");
    }
    out << r.author_id << '\t' << r.text << '\n';
  }
  check_sink(out);
}

std::vector<AuthorGroup> deduplicate_and_group(
    std::span<const CorpusRecord> records) {
  std::vector<AuthorGroup> groups;
  std::unordered_map<std::string_view, std::size_t> group_of;
  std::vector<std::unordered_set<std::string_view>> seen;
  for (std::size_t pos = 0; pos < records.size(); ++pos) {
    const CorpusRecord& r = records[pos];
    auto [it, inserted] = group_of.try_emplace(r.author_id, groups.size());
    if (inserted) {
      groups.push_back(AuthorGroup{r.author_id, {}, {}});
      seen.emplace_back();
    }
    const std::size_t g = it->second;
    if (!seen[g].insert(r.text).second) continue;
    groups[g].texts.push_back(r.text);
    groups[g].positions.push_back(pos);
  }
  std::stable_sort(groups.begin(), groups.end(),
                   [](const AuthorGroup& a, const AuthorGroup& b) {
                     return a.texts.size() > b.texts.size();
                   });
  return groups;
}

std::vector<CorpusRecord> split_by_lines(
    std::span<const CorpusRecord> records) {
  constexpr std::string_view kBreak = "\\n";
  std::vector<CorpusRecord> out;
  for (const CorpusRecord& r : records) {
    std::string_view rest = r.text;
    while (true) {
      const std::size_t at = rest.find(kBreak);
      std::string_view segment = rest.substr(0, at);
      if (!is_blank(segment)) {
        out.push_back(CorpusRecord{r.author_id, std::string(segment)});
      }
      if (at == std::string_view::npos) break;
      rest.remove_prefix(at + kBreak.size());
    }
  }
  return out;
}

void write_author_results(std::span<const AuthorResult> results,
                          std::ostream& out) {
  for (const AuthorResult& r : results) {
    out << fmt::format("{}\t{}\t{:.6f}\t{}\t{:.6f}\n", r.author_id,
                       r.label.str(), r.avg_confidence, r.text_count,
                       r.variability);
  }
  check_sink(out);
}

void write_annotated_texts(std::span<const TextAnnotation> annotations,
                           std::ostream& out) {
  for (const TextAnnotation& a : annotations) {
    out << a.record.author_id << '\t' << a.record.text << '\t'
        << a.label.str() << '\n';
  }
  check_sink(out);
}

LabelMap read_label_file(std::istream& in) {
  const std::string data = read_all(in);
  LabelMap labels;
  for_each_line(data, [&](std::size_t line_number, std::string_view line,
                          std::size_t) {
    if (is_blank(line)) return;
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw ParseError(
          fmt::format("line {}: expected author<TAB>label", line_number),
          line_number);
    }
    std::string_view label = line.substr(tab + 1);
    label = label.substr(0, label.find('\t'));
    PersonalityLabel parsed;
    try {
      parsed = PersonalityLabel::parse(label);
    } catch (const std::invalid_argument& e) {
      throw ParseError(fmt::format("line {}: {}", line_number, e.what()),
                       line_number);
    }
    std::string author(line.substr(0, tab));
    if (!labels.emplace(author, parsed).second) {
      throw ParseError(fmt::format("line {}: duplicate author '{}'",
                                   line_number, author),
                       line_number);
    }
  });
  return labels;
}

}  // namespace traitscan
