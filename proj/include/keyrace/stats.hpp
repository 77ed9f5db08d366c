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
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "keyrace/families.hpp"

namespace keyrace {

/// Result of a goodness-of-fit test. `dof_or_n` is the chi-square degrees of
/// freedom, or the (effective) sample size for Kolmogorov-Smirnov.
struct GofReport {
  std::string test;
  double statistic = 0.0;
  double dof_or_n = 0.0;
  double p_value = 1.0;
  std::map<double, bool> reject_at;

  bool rejects(double significance) const noexcept { return p_value < significance; }
};

/// Significance levels recorded in GofReport::reject_at.
inline constexpr double kReportedLevels[] = {0.05, 0.01, 0.001};

/// Regularized incomplete gamma functions. Series for x < a + 1, Lentz
/// continued fraction otherwise.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

/// Upper tail of the chi-square distribution.
double chi_square_sf(double statistic, double dof);

/// Pearson goodness of fit against `expected_probs`. Throws PreconditionError
/// when the probabilities do not sum to 1 (within 2^-30), lengths differ, or
/// any expected count is below 5.
GofReport chi_square_gof(std::span<const std::uint64_t> observed,
                         std::span<const double> expected_probs);

/// Pearson test of homogeneity between two count vectors over the same
/// categories (2 x k contingency table, k - 1 degrees of freedom).
GofReport chi_square_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

/// Upper tail of the Kolmogorov distribution,
///   P(K > lambda) = 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lambda^2),
/// truncated once terms drop below 1e-10.
double kolmogorov_sf(double lambda);

/// One-sample KS against `cdf`, asymptotic p-value from sqrt(N) * D.
/// Requires N >= 100.
GofReport ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Two-sample KS with effective size nm / (n + m). Requires n, m >= 100.
GofReport ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Winner counts over `replicates` independent draws of a single group whose
/// labels carry `strengths`. Replicate r uses SeedContext{seed, r}.
std::vector<std::uint64_t> tally_choices(const ModelSpec& spec, std::span<const double> strengths,
                                         std::uint64_t replicates, std::uint64_t seed,
                                         unsigned threads = 1);

/// Expected winning probabilities alpha_i / sum(alpha) via strength_to_alpha.
std::vector<double> choice_probabilities(const ModelSpec& spec, std::span<const double> strengths);

/// tally_choices followed by chi_square_gof against choice_probabilities.
GofReport run_choice_experiment(const ModelSpec& spec, std::span<const double> strengths,
                                std::uint64_t replicates, std::uint64_t seed, unsigned threads = 1);

/// "<test> statistic=<x> dof_or_n=<n> p=<p>"
std::string to_line(const GofReport& report);
std::string to_json(const GofReport& report);

/// Label used for outcome i in experiment groups.
std::string experiment_label(std::size_t i);

}  // namespace keyrace
