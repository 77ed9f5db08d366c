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

#include "keyrace/dynamic.hpp"

#include <mutex>

#include <fmt/format.h>

#include "keyrace/errors.hpp"

namespace keyrace {

std::string_view to_string(UpdateCase c) noexcept {
  switch (c) {
    case UpdateCase::NewWinner: return "new-winner";
    case UpdateCase::NoChange: return "no-change";
    case UpdateCase::WinnerRefreshed: return "winner-refreshed";
    case UpdateCase::WinnerRescan: return "rescan";
    case UpdateCase::DeleteNonWinner: return "no-rescan";
    case UpdateCase::DeleteWinner: return "rescan";
    case UpdateCase::GroupRemoved: return "group-removed";
  }
  return "?";
}

DynamicTable::DynamicTable(ModelSpec spec, SeedContext ctx)
    : spec_(spec), ctx_(ctx), orientation_(spec.orientation()) {
  spec_.validate();
}

DynamicTable::Group& DynamicTable::group_for_write(std::string_view group_id) {
  {
    std::shared_lock lock(directory_mutex_);
    auto it = groups_.find(group_id);
    if (it != groups_.end()) return it->second;
  }
  std::unique_lock lock(directory_mutex_);
  return groups_.try_emplace(std::string(group_id)).first->second;
}

const DynamicTable::Group* DynamicTable::find_group(std::string_view group_id) const {
  std::shared_lock lock(directory_mutex_);
  auto it = groups_.find(group_id);
  return it == groups_.end() ? nullptr : &it->second;
}

std::size_t DynamicTable::rescan(Group& g) const {
  auto it = g.rows.begin();
  GroupWinner best{g.winner->group_id, it->first, it->second.key, g.rows.size()};
  std::size_t comparisons = 0;
  for (++it; it != g.rows.end(); ++it) {
    ++comparisons;
    if (outranks(orientation_, it->second.key, it->first, best.key, best.label)) {
      best.label = it->first;
      best.key = it->second.key;
    }
  }
  g.winner = std::move(best);
  return comparisons;
}

ChangeReport DynamicTable::apply(Group& g, std::string_view group_id, std::string_view label,
                                 Entry entry) {
  auto vit = g.versions.find(label);
  if (vit == g.versions.end()) vit = g.versions.emplace(std::string(label), 0).first;
  ++vit->second;

  auto [rit, inserted] = g.rows.try_emplace(std::string(label), entry);
  if (!inserted) rit->second = entry;

  if (!g.winner) {
    g.winner = GroupWinner{std::string(group_id), std::string(label), entry.key, 1};
    return {UpdateCase::NewWinner, 0, false};
  }

  GroupWinner& w = *g.winner;
  w.row_count = g.rows.size();
  if (w.label == label) {
    if (!beats(orientation_, w.key, entry.key)) {
      w.key = entry.key;
      return {UpdateCase::WinnerRefreshed, 1, false};
    }
    return {UpdateCase::WinnerRescan, 1 + rescan(g), true};
  }
  if (outranks(orientation_, entry.key, label, w.key, w.label)) {
    w.label = std::string(label);
    w.key = entry.key;
    return {UpdateCase::NewWinner, 1, false};
  }
  return {UpdateCase::NoChange, 1, false};
}

ChangeReport DynamicTable::upsert(std::string_view group_id, std::string_view label,
                                  double strength) {
  Group& g = group_for_write(group_id);
  const std::uint64_t version = next_version(group_id, label);
  const double u = derive_uniform(ctx_, group_id, label, version);
  Key key;
  try {
    key = make_key(spec_, strength, u);
  } catch (const DegenerateWeightError& e) {
    throw DegenerateWeightError(fmt::format("({}, {}): {}", group_id, label, e.what()));
  } catch (const DomainError& e) {
    throw DomainError(fmt::format("({}, {}): {}", group_id, label, e.what()));
  }
  return apply(g, group_id, label, Entry{strength, u, key});
}

ChangeReport DynamicTable::upsert_with_key(std::string_view group_id, std::string_view label,
                                           double strength, Key key) {
  return apply(group_for_write(group_id), group_id, label, Entry{strength, 0.0, key});
}

ChangeReport DynamicTable::remove(std::string_view group_id, std::string_view label) {
  Group* g = nullptr;
  {
    std::shared_lock lock(directory_mutex_);
    auto it = groups_.find(group_id);
    if (it != groups_.end()) g = &it->second;
  }
  const auto missing = [&] { return NotFoundError(fmt::format("no row ({}, {})", group_id, label)); };
  if (!g) throw missing();
  auto rit = g->rows.find(label);
  if (rit == g->rows.end()) throw missing();
  g->rows.erase(rit);
  if (g->rows.empty()) {
    g->winner.reset();
    return {UpdateCase::GroupRemoved, 0, false};
  }
  g->winner->row_count = g->rows.size();
  if (g->winner->label != label) return {UpdateCase::DeleteNonWinner, 1, false};
  return {UpdateCase::DeleteWinner, 1 + rescan(*g), true};
}

std::optional<GroupWinner> DynamicTable::winner(std::string_view group_id) const {
  const Group* g = find_group(group_id);
  if (!g) return std::nullopt;
  return g->winner;
}

WinnerMap DynamicTable::winners() const {
  std::shared_lock lock(directory_mutex_);
  WinnerMap out;
  for (const auto& [id, g] : groups_) {
    if (g.winner) out.emplace(id, *g.winner);
  }
  return out;
}

std::vector<KeyedRow> DynamicTable::keyed_rows() const {
  std::shared_lock lock(directory_mutex_);
  std::vector<KeyedRow> out;
  for (const auto& [id, g] : groups_) {
    for (const auto& [label, e] : g.rows) out.push_back(KeyedRow{Row{id, label, e.strength}, e.uniform, e.key});
  }
  return out;
}

std::uint64_t DynamicTable::next_version(std::string_view group_id, std::string_view label) const {
  const Group* g = find_group(group_id);
  if (!g) return 0;
  auto it = g->versions.find(label);
  return it == g->versions.end() ? 0 : it->second;
}

std::size_t DynamicTable::size() const {
  std::shared_lock lock(directory_mutex_);
  std::size_t n = 0;
  for (const auto& [id, g] : groups_) n += g.rows.size();
  return n;
}

}  // namespace keyrace
