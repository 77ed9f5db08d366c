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

#include <fstream>
#include <string>
#include <vector>

#include "keyrace/csv.hpp"
#include "keyrace/sampler.hpp"

#ifndef KEYRACE_FIXTURE_DIR
#error "KEYRACE_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace keyrace::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(KEYRACE_FIXTURE_DIR) + "/" + name;
}

/// The worked 14-row example with its published keys injected.
inline std::vector<KeyedRow> worked_example_keyed() {
  std::ifstream in(fixture_path("worked_example.csv"));
  const auto table = csv::read_table(in, true);
  std::vector<KeyedRow> keyed;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    keyed.push_back(KeyedRow{table.rows[i], 0.0, Key::plain(table.keys[i])});
  }
  return keyed;
}

}  // namespace keyrace::testing
