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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace keyrace {

/// Normalized table for the classical samplers. Unlike the key race, both
/// methods here need the full weight vector up front and must be rebuilt
/// whenever any weight changes.
struct WeightTable {
  std::vector<std::string> labels;
  std::vector<double> weights;
  std::vector<double> cumulative;  // strictly increasing, back() == 1
  std::vector<std::size_t> alias_index;
  std::vector<double> alias_cutoff;

  std::size_t size() const noexcept { return labels.size(); }
};

/// O(n) alias construction with small/large work lists: an outcome whose
/// scaled mass n*p is <= 1 is small. Throws DomainError on empty input,
/// non-positive or non-finite weights, or duplicate labels.
WeightTable build_weight_table(std::span<const std::string> labels, std::span<const double> weights);

/// cell = floor(u1 * n); keep the cell if u2 < cutoff, else take its alias.
std::size_t sample_alias_index(const WeightTable& table, double u1, double u2) noexcept;
const std::string& sample_alias(const WeightTable& table, double u1, double u2) noexcept;

enum class SearchStrategy { Linear, Bisection };

/// Smallest i with cumulative[i] > u.
std::size_t sample_inverse_index(const WeightTable& table, double u, SearchStrategy strategy) noexcept;
const std::string& sample_inverse(const WeightTable& table, double u, SearchStrategy strategy) noexcept;

/// Probability mass each outcome receives from the alias table:
/// (cutoff[i] + sum over j aliased to i of (1 - cutoff[j])) / n.
std::vector<double> alias_mass(const WeightTable& table);

}  // namespace keyrace
