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

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "keyrace/families.hpp"
#include "keyrace/sampler.hpp"

namespace keyrace::csv {

/// Rows read from "ID,QUAL,Strength[,KEY]" input. `keys` is filled only when
/// a key column was requested.
struct Table {
  std::vector<Row> rows;
  std::vector<double> keys;
};

/// Parses the header and every data line. Blank lines are skipped and a
/// trailing '\r' is tolerated. Throws ParseError carrying the 1-based line
/// number for a bad header, wrong field count, unparsable number or
/// duplicate (ID, QUAL). A fourth column is read as the key when `with_keys`
/// is set and ignored otherwise.
Table read_table(std::istream& in, bool with_keys);

/// Writes "ID,QUAL,Strength" and one line per row; numbers use the shortest
/// round-trip representation.
void write_table(std::ostream& out, const std::vector<Row>& rows);

/// Writes "ID,QUAL,Strength,KEY" with each row's comparison key.
void write_keyed_table(std::ostream& out, const std::vector<KeyedRow>& rows);

/// Strict double parse of the whole field; nullopt on any trailing garbage.
std::optional<double> parse_double(std::string_view field);

std::vector<std::string_view> split(std::string_view line, char sep = ',');

}  // namespace keyrace::csv
