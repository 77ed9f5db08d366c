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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "keyrace/families.hpp"

namespace keyrace {

/// One (group, label, strength) record. (group_id, label) is unique per table.
struct Row {
  std::string group_id;
  std::string label;
  double strength = 0.0;

  friend bool operator==(const Row&, const Row&) = default;
};

struct KeyedRow {
  Row row;
  double uniform = 0.0;
  Key key;
};

struct GroupWinner {
  std::string group_id;
  std::string label;
  Key key;
  std::size_t row_count = 0;
};

/// Winners keyed and ordered by group id.
using WinnerMap = std::map<std::string, GroupWinner, std::less<>>;

struct SeedContext {
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

/// Counter-based uniform in (0,1) for one row. A pure function of its
/// arguments, so rows can be keyed in any order or partition. `version`
/// separates successive redraws of the same row (see DynamicTable).
double derive_uniform(const SeedContext& ctx, std::string_view group_id, std::string_view label,
                      std::uint64_t version = 0);

/// Total order used by every reduction: better key first, then the smaller
/// label on an exact key tie.
inline bool outranks(Orientation orientation, const Key& a, std::string_view a_label,
                     const Key& b, std::string_view b_label) noexcept {
  if (beats(orientation, a, b)) return true;
  if (beats(orientation, b, a)) return false;
  return a_label < b_label;
}

/// Keys every row with its derived uniform. Output order matches input.
/// Family errors are rethrown with the offending (group, label) prepended.
std::vector<KeyedRow> assign_keys(std::span<const Row> rows, const ModelSpec& spec,
                                  const SeedContext& ctx, unsigned threads = 1);

WinnerMap reduce_winners(std::span<const KeyedRow> keyed, Orientation orientation);

/// Folds `other` into `acc`. Associative and commutative, so partial maps
/// from any partitioning merge to the same result.
void merge_winners(WinnerMap& acc, const WinnerMap& other, Orientation orientation);

/// assign_keys followed by reduce_winners, sharded over `threads` workers.
/// The result does not depend on `threads`.
WinnerMap sample(std::span<const Row> rows, const ModelSpec& spec, const SeedContext& ctx,
                 unsigned threads = 1);

}  // namespace keyrace
