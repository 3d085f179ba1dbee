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

#include "traitscan/correlation_model.h"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string_view>

#include <fmt/format.h>

#include "traitscan/corpus_io.h"

namespace traitscan {

namespace {

constexpr std::string_view kModelHeader = "feature\text\temo\tagr\tcon\tope";
constexpr std::string_view kPatternHeader = "pattern\ttrait\tassociation";

using Cell = std::pair<double, Significance>;

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t tab = line.find('\t', pos);
    fields.push_back(line.substr(pos, tab - pos));
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  return fields;
}

std::optional<double> parse_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value,
                                   std::chars_format::fixed);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<Cell> parse_cell(std::string_view cell) {
  std::size_t stars = 0;
  while (!cell.empty() && cell.back() == '*') {
    cell.remove_suffix(1);
    ++stars;
  }
  if (stars > 2) return std::nullopt;
  auto r = parse_number(cell);
  if (!r || std::fabs(*r) > 1.0) return std::nullopt;
  return Cell{*r, static_cast<Significance>(stars)};
}

// Shortest fixed-point rendering that reads back exactly, with at least two
// decimals and no leading zero: -0.08 -> "-.08", 0.1 -> ".10".
std::string format_r(double r) {
  std::string text;
  for (int precision = 2; precision <= 17; ++precision) {
    text = fmt::format("{:.{}f}", r, precision);
    if (parse_number(text) == r) break;
  }
  const bool negative = text.front() == '-';
  std::string_view body(text);
  if (negative) body.remove_prefix(1);
  if (body.starts_with("0.")) body.remove_prefix(1);
  return (negative ? "-" : "") + std::string(body);
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-empty line, CR stripped.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  }
  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

}  // namespace

void CorrelationModel::add_row(Feature feature, const PerTrait<Cell>& cells) {
  if (has_feature(feature)) {
    throw std::invalid_argument("duplicate row for feature " +
                                std::string(feature_code(feature)));
  }
  Row row;
  for (Trait t : kAllTraits) {
    const auto& [r, significance] = cells[index(t)];
    if (!(std::fabs(r) <= 1.0)) {
      throw std::invalid_argument("correlation outside [-1, 1]");
    }
    row[index(t)] = Correlation{feature, t, r, significance};
  }
  rows_[index(feature)] = row;
}

std::optional<Correlation> CorrelationModel::lookup(Feature f, Trait t) const {
  if (!has_feature(f)) return std::nullopt;
  return (*rows_[index(f)])[index(t)];
}

std::vector<Correlation> CorrelationModel::correlations() const {
  std::vector<Correlation> out;
  for (const auto& row : rows_) {
    if (row) out.insert(out.end(), row->begin(), row->end());
  }
  return out;
}

CorrelationModel CorrelationModel::with_patterns(
    std::vector<PatternCorrelation> patterns) const {
  CorrelationModel out = *this;
  out.patterns_ = std::move(patterns);
  return out;
}

CorrelationModel CorrelationModel::strong_only() const {
  CorrelationModel out = *this;
  for (auto& row : out.rows_) {
    if (!row) continue;
    for (Correlation& c : *row) {
      if (c.significance == Significance::kWeak) {
        c.significance = Significance::kNone;
      }
    }
  }
  return out;
}

CorrelationModel CorrelationModel::with_inverted_signs(Feature f) const {
  CorrelationModel out = *this;
  if (auto& row = out.rows_[index(f)]) {
    for (Correlation& c : *row) c.r = -c.r;
  }
  return out;
}

CorrelationModel CorrelationModel::scaled(double factor) const {
  CorrelationModel out = *this;
  for (auto& row : out.rows_) {
    if (!row) continue;
    for (Correlation& c : *row) c.r *= factor;
  }
  for (PatternCorrelation& p : out.patterns_) p.association *= factor;
  return out;
}

CorrelationModel default_model() {
  constexpr auto N = Significance::kNone;
  constexpr auto W = Significance::kWeak;
  constexpr auto S = Significance::kStrong;
  CorrelationModel model;
  // clang-format off
  model.add_row(Feature::kPunctuation,
                {{{-.08, S}, {-.04, N}, {-.01, N}, {-.04, N}, {-.10, S}}});
  model.add_row(Feature::kExclamation,
                {{{-0.0, N}, {-.05, W}, {.06, S}, {.00, N}, {-.03, N}}});
  model.add_row(Feature::kNumbers,
                {{{-.03, N}, {.05, W}, {-.03, N}, {-.02, N}, {-.06, S}}});
  model.add_row(Feature::kParentheses,
                {{{-.06, S}, {.03, N}, {-.04, W}, {-.01, N}, {.10, S}}});
  model.add_row(Feature::kQuestionMarks,
                {{{-.06, S}, {-.05, W}, {-.04, N}, {-.06, S}, {.08, S}}});
  model.add_row(Feature::kQuotes,
                {{{-.05, W}, {-.02, N}, {-.01, N}, {-.03, N}, {.09, S}}});
  model.add_row(Feature::kTypeToken,
                {{{-.05, S}, {.10, S}, {-.04, W}, {-.05, W}, {.09, S}}});
  model.add_row(Feature::kWordFrequency,
                {{{.05, W}, {-.06, S}, {.03, W}, {.06, S}, {.05, S}}});
  // clang-format on
  return model;
}

CorrelationModel load_model(std::istream& in) {
  LineReader reader(in);
  std::string line;
  if (!reader.next(line) || line != kModelHeader) {
    throw ParseError(fmt::format("line {}: expected header '{}'",
                                 reader.number(), kModelHeader),
                     reader.number());
  }
  CorrelationModel model;
  while (reader.next(line)) {
    const std::size_t n = reader.number();
    const auto fields = split_tabs(line);
    if (fields.size() != kTraitCount + 1) {
      throw ParseError(
          fmt::format("line {}: expected 6 columns, found {}", n, fields.size()),
          n);
    }
    const auto feature = feature_from_code(fields[0]);
    if (!feature) {
      throw ParseError(
          fmt::format("line {}: unknown feature '{}'", n, fields[0]), n);
    }
    if (model.has_feature(*feature)) {
      throw ParseError(
          fmt::format("line {}: duplicate feature '{}'", n, fields[0]), n);
    }
    PerTrait<Cell> cells;
    for (std::size_t i = 0; i < kTraitCount; ++i) {
      auto cell = parse_cell(fields[i + 1]);
      if (!cell) {
        throw ParseError(fmt::format("line {} column {}: malformed cell '{}'",
                                     n, i + 2, fields[i + 1]),
                         n);
      }
      cells[i] = *cell;
    }
    model.add_row(*feature, cells);
  }
  return model;
}

void dump_model(const CorrelationModel& model, std::ostream& out) {
  out << kModelHeader << '\n';
  for (Feature f : kAllFeatures) {
    if (!model.has_feature(f)) continue;
    out << feature_code(f);
    for (Trait t : kAllTraits) {
      const Correlation c = *model.lookup(f, t);
      out << '\t' << format_r(c.r)
          << std::string(static_cast<std::size_t>(c.significance), '*');
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing correlation model");
}

void dump_patterns(std::span<const PatternCorrelation> patterns,
                   std::ostream& out) {
  out << kPatternHeader << '\n';
  for (const PatternCorrelation& p : patterns) {
    out << p.token << '\t' << trait_code(p.trait) << '\t'
        << fmt::format("{}", p.association) << '\n';
  }
  if (!out) throw std::runtime_error("failed writing patterns");
}

std::vector<PatternCorrelation> load_patterns(std::istream& in) {
  LineReader reader(in);
  std::string line;
  if (!reader.next(line) || line != kPatternHeader) {
    throw ParseError(fmt::format("line {}: expected header '{}'",
                                 reader.number(), kPatternHeader),
                     reader.number());
  }
  std::vector<PatternCorrelation> patterns;
  while (reader.next(line)) {
    const std::size_t n = reader.number();
    const auto fields = split_tabs(line);
    std::optional<Trait> trait;
    std::optional<double> association;
    if (fields.size() == 3) {
      trait = trait_from_code(fields[1]);
      auto text = fields[2];
      double value = 0.0;
      auto [ptr, ec] =
          std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec == std::errc() && ptr == text.data() + text.size() &&
          std::isfinite(value)) {
        association = value;
      }
    }
    if (fields.size() != 3 || fields[0].empty() || !trait || !association) {
      throw ParseError(fmt::format("line {}: malformed pattern row", n), n);
    }
    patterns.push_back(
        PatternCorrelation{std::string(fields[0]), *trait, *association});
  }
  return patterns;
}

std::vector<std::pair<Trait, double>> firing_contributions(
    const CorrelationModel& model, Feature feature) {
  if (!model.has_feature(feature)) {
    throw std::out_of_range("model has no row for feature " +
                            std::string(feature_code(feature)));
  }
  std::vector<std::pair<Trait, double>> out;
  for (Trait t : kAllTraits) {
    const Correlation c = *model.lookup(feature, t);
    if (c.fires()) out.emplace_back(t, c.r);
  }
  return out;
}

}  // namespace traitscan
