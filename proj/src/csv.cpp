// Copyright 2026 The keyrace Authors
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

#include "keyrace/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "keyrace/errors.hpp"

namespace keyrace::csv {
namespace {

std::string_view strip_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<double> parse_double(std::string_view field) {
  while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
  while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) return std::nullopt;
  return v;
}

Table read_table(std::istream& in, bool with_keys) {
  Table table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::set<std::pair<std::string, std::string>> seen;
  std::size_t expected_fields = 3;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = strip_cr(line);
    if (text.empty()) continue;
    const auto fields = split(text);
    if (!have_header) {
      if (fields.size() < 3 || fields[0] != "ID" || fields[1] != "QUAL" || fields[2] != "Strength") {
        throw ParseError(line_no, "expected header ID,QUAL,Strength");
      }
      if (fields.size() > 4) throw ParseError(line_no, "at most one column after Strength");
      if (with_keys && fields.size() < 4) {
        throw ParseError(line_no, "key injection needs a fourth column");
      }
      expected_fields = fields.size();
      have_header = true;
      continue;
    }
    if (fields.size() != expected_fields) {
      throw ParseError(line_no, fmt::format("expected {} fields, got {}", expected_fields, fields.size()));
    }
    const auto strength = parse_double(fields[2]);
    if (!strength) throw ParseError(line_no, fmt::format("bad Strength '{}'", fields[2]));
    if (with_keys) {
      const auto key = parse_double(fields[3]);
      if (!key) throw ParseError(line_no, fmt::format("bad key '{}'", fields[3]));
      table.keys.push_back(*key);
    }
    Row row{std::string(fields[0]), std::string(fields[1]), *strength};
    if (!seen.emplace(row.group_id, row.label).second) {
      throw ParseError(line_no, fmt::format("duplicate row ({}, {})", row.group_id, row.label));
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw ParseError(line_no + 1, "missing header ID,QUAL,Strength");
  return table;
}

void write_table(std::ostream& out, const std::vector<Row>& rows) {
  out << "ID,QUAL,Strength\n";
  for (const auto& r : rows) out << fmt::format("{},{},{}\n", r.group_id, r.label, r.strength);
}

void write_keyed_table(std::ostream& out, const std::vector<KeyedRow>& rows) {
  out << "ID,QUAL,Strength,KEY\n";
  for (const auto& kr : rows) {
    out << fmt::format("{},{},{},{}\n", kr.row.group_id, kr.row.label, kr.row.strength, kr.key.order);
  }
}

}  // namespace keyrace::csv
