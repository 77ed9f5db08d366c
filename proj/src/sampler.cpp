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

#include "keyrace/sampler.hpp"


#include <fmt/format.h>

#include "keyrace/errors.hpp"
#include "keyrace/parallel.hpp"

namespace keyrace {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t absorb(std::uint64_t h, std::uint64_t word) noexcept {
  return mix64(h ^ mix64(word + kGolden));
}

std::uint64_t absorb(std::uint64_t h, std::string_view s) noexcept {
  h = absorb(h, static_cast<std::uint64_t>(s.size()));
  std::size_t i = 0;
  for (; i + 8 <= s.size(); i += 8) {
    std::uint64_t word = 0;
    for (std::size_t b = 0; b < 8; ++b) {
      word |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[i + b])) << (8 * b);
    }
    h = absorb(h, word);
  }
  if (i < s.size()) {
    std::uint64_t word = 0;
    for (std::size_t b = 0; i + b < s.size(); ++b) {
      word |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[i + b])) << (8 * b);
    }
    h = absorb(h, word);
  }
  return h;
}

KeyedRow key_row(const Row& row, const ModelSpec& spec, const SeedContext& ctx) {
  const double u = derive_uniform(ctx, row.group_id, row.label);
  try {
    return KeyedRow{row, u, make_key(spec, row.strength, u)};
  } catch (const DegenerateWeightError& e) {
    throw DegenerateWeightError(fmt::format("({}, {}): {}", row.group_id, row.label, e.what()));
  } catch (const DomainError& e) {
    throw DomainError(fmt::format("({}, {}): {}", row.group_id, row.label, e.what()));
  }
}

void offer(WinnerMap& winners, const KeyedRow& kr, Orientation orientation) {
  auto it = winners.find(kr.row.group_id);
  if (it == winners.end()) {
    winners.emplace(kr.row.group_id, GroupWinner{kr.row.group_id, kr.row.label, kr.key, 1});
    return;
  }
  GroupWinner& w = it->second;
  ++w.row_count;
  if (outranks(orientation, kr.key, kr.row.label, w.key, w.label)) {
    w.label = kr.row.label;
    w.key = kr.key;
  }
}

}  // namespace

double derive_uniform(const SeedContext& ctx, std::string_view group_id, std::string_view label,
                      std::uint64_t version) {
  std::uint64_t h = mix64(ctx.seed + kGolden);
  h = absorb(h, ctx.replicate);
  h = absorb(h, version);
  h = absorb(h, group_id);
  h = absorb(h, label);
  return open_unit_from_bits(h);
}

std::vector<KeyedRow> assign_keys(std::span<const Row> rows, const ModelSpec& spec,
                                  const SeedContext& ctx, unsigned threads) {
  spec.validate();
  std::vector<KeyedRow> out(rows.size());
  detail::parallel_chunks(rows.size(), threads, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out[i] = key_row(rows[i], spec, ctx);
  });
  return out;
}

WinnerMap reduce_winners(std::span<const KeyedRow> keyed, Orientation orientation) {
  WinnerMap winners;
  for (const auto& kr : keyed) offer(winners, kr, orientation);
  return winners;
}

void merge_winners(WinnerMap& acc, const WinnerMap& other, Orientation orientation) {
  for (const auto& [group, w] : other) {
    auto it = acc.find(group);
    if (it == acc.end()) {
      acc.emplace(group, w);
      continue;
    }
    GroupWinner& mine = it->second;
    mine.row_count += w.row_count;
    if (outranks(orientation, w.key, w.label, mine.key, mine.label)) {
      mine.label = w.label;
      mine.key = w.key;
    }
  }
}

WinnerMap sample(std::span<const Row> rows, const ModelSpec& spec, const SeedContext& ctx,
                 unsigned threads) {
  spec.validate();
  const Orientation orientation = spec.orientation();
  const std::size_t shards = std::max<std::size_t>(1, std::min<std::size_t>(threads, rows.size()));
  std::vector<WinnerMap> partial(shards);
  detail::parallel_chunks(rows.size(), threads, [&](std::size_t c, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) offer(partial[c], key_row(rows[i], spec, ctx), orientation);
  });
  WinnerMap winners = std::move(partial.front());
  for (std::size_t c = 1; c < shards; ++c) merge_winners(winners, partial[c], orientation);
  return winners;
}

}  // namespace keyrace
