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
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "keyrace/families.hpp"
#include "keyrace/sampler.hpp"

namespace keyrace {

/// Which branch of the incremental-maintenance rules an operation took.
enum class UpdateCase {
  NewWinner,        // upsert key beats the stored winner (or the group was empty)
  NoChange,         // upsert of a non-winner whose key loses: nothing to do
  WinnerRefreshed,  // the winner itself was upserted and still wins
  WinnerRescan,     // the winner itself was upserted and now loses: rescan group
  DeleteNonWinner,  // deleted row was not the winner: nothing to do
  DeleteWinner,     // deleted row was the winner: rescan group
  GroupRemoved,     // deleted the last row of the group
};

std::string_view to_string(UpdateCase c) noexcept;

struct ChangeReport {
  UpdateCase kind = UpdateCase::NoChange;
  /// Key comparisons performed, including the one against the stored winner.
  std::size_t comparisons = 0;
  bool rescanned = false;
};

/// Per-group winners maintained under upserts and deletes. Only the touched
/// group is ever examined, and only a winner that lost (or vanished) triggers
/// a rescan of that group.
///
/// Every upsert draws a fresh uniform from (seed, replicate, version, group,
/// label), where version counts prior upserts of that (group, label) and
/// survives deletes. The first upsert uses version 0, i.e. the same draw as
/// the static sampler.
///
/// Distinct groups may be mutated from different threads; one group must have
/// a single writer. Reads concurrent with writes need external locking.
class DynamicTable {
 public:
  DynamicTable(ModelSpec spec, SeedContext ctx);

  DynamicTable(const DynamicTable&) = delete;
  DynamicTable& operator=(const DynamicTable&) = delete;

  ChangeReport upsert(std::string_view group_id, std::string_view label, double strength);

  /// Upsert with a caller-supplied key instead of a generated one. Still
  /// consumes a version.
  ChangeReport upsert_with_key(std::string_view group_id, std::string_view label,
                               double strength, Key key);

  /// Throws NotFoundError if the row is absent.
  ChangeReport remove(std::string_view group_id, std::string_view label);

  std::optional<GroupWinner> winner(std::string_view group_id) const;
  WinnerMap winners() const;

  /// Current rows with their keys, ordered by (group, label).
  std::vector<KeyedRow> keyed_rows() const;

  /// Number of upserts seen so far for (group, label); the next upsert uses
  /// this as its version.
  std::uint64_t next_version(std::string_view group_id, std::string_view label) const;

  std::size_t size() const;
  const ModelSpec& spec() const noexcept { return spec_; }
  const SeedContext& context() const noexcept { return ctx_; }

 private:
  struct Entry {
    double strength = 0.0;
    double uniform = 0.0;
    Key key;
  };

  struct Group {
    std::map<std::string, Entry, std::less<>> rows;
    std::map<std::string, std::uint64_t, std::less<>> versions;
    std::optional<GroupWinner> winner;
  };

  Group& group_for_write(std::string_view group_id);
  const Group* find_group(std::string_view group_id) const;
  ChangeReport apply(Group& g, std::string_view group_id, std::string_view label, Entry entry);
  std::size_t rescan(Group& g) const;

  ModelSpec spec_;
  SeedContext ctx_;
  Orientation orientation_;
  mutable std::shared_mutex directory_mutex_;
  // Group nodes are never erased, so references stay valid without the lock.
  std::map<std::string, Group, std::less<>> groups_;
};

}  // namespace keyrace
