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

#include "keyrace/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "keyrace/errors.hpp"

namespace keyrace {

WeightTable build_weight_table(std::span<const std::string> labels, std::span<const double> weights) {
  if (labels.size() != weights.size()) {
    throw std::invalid_argument("build_weight_table: labels and weights differ in length");
  }
  if (labels.empty()) throw DomainError("build_weight_table: no outcomes");
  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw DomainError(fmt::format("weight of '{}' must be positive and finite, got {}", labels[i],
                                    weights[i]));
    }
    if (!seen.insert(labels[i]).second) {
      throw DomainError(fmt::format("duplicate label '{}'", labels[i]));
    }
  }

  const std::size_t n = labels.size();
  WeightTable t;
  t.labels.assign(labels.begin(), labels.end());
  t.weights.assign(weights.begin(), weights.end());
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);

  t.cumulative.resize(n);
  double running = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    running += weights[i];
    t.cumulative[i] = running / total;
  }
  t.cumulative.back() = 1.0;

  std::vector<double> scaled(n);
  std::vector<std::size_t> small, large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = weights[i] * static_cast<double>(n) / total;
    (scaled[i] <= 1.0 ? small : large).push_back(i);
  }
  t.alias_index.resize(n);
  t.alias_cutoff.resize(n);
  while (!small.empty() && !large.empty()) {
    const std::size_t s = small.back();
    small.pop_back();
    const std::size_t l = large.back();
    t.alias_cutoff[s] = scaled[s];
    t.alias_index[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] <= 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers hold mass 1 up to rounding.
  for (std::size_t i : small) {
    t.alias_cutoff[i] = 1.0;
    t.alias_index[i] = i;
  }
  for (std::size_t i : large) {
    t.alias_cutoff[i] = 1.0;
    t.alias_index[i] = i;
  }
  return t;
}

std::size_t sample_alias_index(const WeightTable& table, double u1, double u2) noexcept {
  const std::size_t n = table.size();
  const auto cell = std::min(static_cast<std::size_t>(u1 * static_cast<double>(n)), n - 1);
  return u2 < table.alias_cutoff[cell] ? cell : table.alias_index[cell];
}

const std::string& sample_alias(const WeightTable& table, double u1, double u2) noexcept {
  return table.labels[sample_alias_index(table, u1, u2)];
}

std::size_t sample_inverse_index(const WeightTable& table, double u, SearchStrategy strategy) noexcept {
  const auto& cum = table.cumulative;
  const std::size_t last = cum.size() - 1;
  if (strategy == SearchStrategy::Linear) {
    for (std::size_t i = 0; i < last; ++i) {
      if (cum[i] > u) return i;
    }
    return last;
  }
  std::size_t lo = 0, hi = last;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (cum[mid] > u) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

const std::string& sample_inverse(const WeightTable& table, double u, SearchStrategy strategy) noexcept {
  return table.labels[sample_inverse_index(table, u, strategy)];
}

std::vector<double> alias_mass(const WeightTable& table) {
  const std::size_t n = table.size();
  std::vector<double> mass(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    mass[j] += table.alias_cutoff[j];
    mass[table.alias_index[j]] += 1.0 - table.alias_cutoff[j];
  }
  for (double& m : mass) m /= static_cast<double>(n);
  return mass;
}

}  // namespace keyrace
