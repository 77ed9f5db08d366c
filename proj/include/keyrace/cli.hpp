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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "keyrace/families.hpp"

namespace keyrace::cli {

/// Process exit codes. Stable contract.
enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kParseError = 2,
  kDomainError = 3,
  kStreamWarning = 4,
};

struct RunConfig {
  std::string model = "canonical";
  double scale_c = 1.0;
  /// Unset means the family's conventional offset (see default_spec).
  std::optional<double> offset_d;
  std::uint64_t seed = 0;
  std::uint64_t replicates = 1;
  unsigned threads = 1;
  bool inject_keys = false;
  bool with_key = false;
  bool quick = false;
  /// Optional file for `update`: final rows with their keys.
  std::string dump_table;
  // bench sizes
  std::uint64_t bench_rows = 1000000;
  std::uint64_t bench_groups = 1000;
  std::uint64_t bench_updates = 200000;
};

/// Builds and validates the ModelSpec. Throws DomainError.
ModelSpec model_spec(const RunConfig& config);

/// Reads "ID,QUAL,Strength[,KEY]" from `in`, writes "ID,QUAL[,KEY]" per
/// group sorted by ID (with a leading REPLICATE column when replicates > 1).
int cmd_sample(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

/// Applies "UPSERT id,qual,strength[,key]" / "DELETE id,qual" lines, printing
/// "ID,QUAL,KEY,CASE,COMPARISONS,RESCAN" after each.
int cmd_update(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

/// Runs the statistical battery; with a fixture on `in` also checks the
/// fixture's groups under the configured model. Pass in = nullptr for none.
int cmd_validate(const RunConfig& config, std::istream* in, std::ostream& out, std::ostream& err);

int cmd_bench(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace keyrace::cli
