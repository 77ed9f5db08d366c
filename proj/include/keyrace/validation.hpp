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
#include <string>
#include <vector>

#include "keyrace/families.hpp"

namespace keyrace::validation {

struct CriterionResult {
  std::string name;
  bool passed = false;
  /// Representative p-value; 1 for exact (non-statistical) checks that pass.
  double p_value = 1.0;
  std::string detail;
};

struct BatteryOptions {
  std::uint64_t seed = 0;
  /// Reduced sample sizes and seed counts; lower power, faster.
  bool quick = false;
  unsigned threads = 1;
};

inline constexpr double kSignificance = 1e-3;

/// Chi-square of winner frequencies against alpha / sum(alpha) for one family
/// and weight vector, repeated over `seeds` seeds. Passes when at most
/// `max_rejections` runs reject at kSignificance.
CriterionResult choice_law(Family family, const std::vector<double>& weights, std::uint64_t draws,
                           std::uint64_t seeds, std::uint64_t max_rejections,
                           const BatteryOptions& opts);

/// Gumbel1 (c = 1) strengths against their softmax.
CriterionResult probit_softmax(const std::vector<double>& strengths, std::uint64_t draws,
                               std::uint64_t seeds, std::uint64_t max_rejections,
                               const BatteryOptions& opts);

/// Two-sample KS: max of canonical keys with weights a1, a2 against direct
/// canonical keys with weight a1 + a2, plus the negative control a = 1 vs 4.
CriterionResult max_stability(double a1, double a2, std::uint64_t draws, const BatteryOptions& opts);

/// One-sample KS of canonical keys against t^alpha.
CriterionResult representation_law(double alpha, std::uint64_t draws, const BatteryOptions& opts);

/// Canonical, Gumbel1(log alpha), Frechet2(alpha) and ExpMin(alpha) pick the
/// same index on shared uniforms, for every one of `instances` random cases.
CriterionResult canonical_equivalence(std::uint64_t instances, const BatteryOptions& opts);

/// Alias-table and key-race frequencies each fit the weights, and agree with
/// each other under a two-sample chi-square.
CriterionResult alias_race_agreement(const std::vector<double>& weights, std::uint64_t draws,
                                     const BatteryOptions& opts);

/// Random upsert/delete stream over `groups` groups; winners compared against
/// a from-scratch reduction every `check_every` steps and at the end.
CriterionResult dynamic_scratch(Family family, std::uint64_t steps, std::size_t groups,
                                std::uint64_t check_every, const BatteryOptions& opts);

/// Everything above at the default sizes (or reduced ones under quick).
std::vector<CriterionResult> run_battery(const BatteryOptions& opts);

}  // namespace keyrace::validation
