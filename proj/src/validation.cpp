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

#include "keyrace/validation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "keyrace/baselines.hpp"
#include "keyrace/dynamic.hpp"
#include "keyrace/sampler.hpp"
#include "keyrace/stats.hpp"
#include "keyrace/uniform.hpp"

namespace keyrace::validation {
namespace {

std::uint64_t tag(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t stream_seed(const BatteryOptions& opts, std::string_view name, std::uint64_t k = 0) {
  return mix64(mix64(opts.seed ^ tag(name)) + k);
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += fmt::format("{}{}", i ? "," : "", v[i]);
  return s;
}

CriterionResult repeated_choice(std::string name, const ModelSpec& spec,
                                const std::vector<double>& strengths, std::uint64_t draws,
                                std::uint64_t seeds, std::uint64_t max_rejections,
                                const BatteryOptions& opts) {
  std::uint64_t rejections = 0;
  double min_p = 1.0;
  for (std::uint64_t s = 0; s < seeds; ++s) {
    const auto r = run_choice_experiment(spec, strengths, draws, stream_seed(opts, name, s), opts.threads);
    if (r.rejects(kSignificance)) ++rejections;
    min_p = std::min(min_p, r.p_value);
  }
  CriterionResult out;
  out.name = std::move(name);
  out.passed = rejections <= max_rejections;
  out.p_value = min_p;
  out.detail = fmt::format("{}/{} seeds rejected at {} (allowed {}), N={}", rejections, seeds,
                           kSignificance, max_rejections, draws);
  return out;
}

bool same_winners(const WinnerMap& a, const WinnerMap& b) {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
    const auto& x = ia->second;
    const auto& y = ib->second;
    if (ia->first != ib->first || x.label != y.label || x.key.order != y.key.order ||
        x.row_count != y.row_count) {
      return false;
    }
  }
  return true;
}

}  // namespace

CriterionResult choice_law(Family family, const std::vector<double>& weights, std::uint64_t draws,
                           std::uint64_t seeds, std::uint64_t max_rejections,
                           const BatteryOptions& opts) {
  const ModelSpec spec = default_spec(family);
  std::vector<double> strengths;
  for (double w : weights) strengths.push_back(alpha_to_strength(spec, w));
  return repeated_choice(fmt::format("choice-law:{}:{}", to_string(family), join(weights)), spec,
                         strengths, draws, seeds, max_rejections, opts);
}

CriterionResult probit_softmax(const std::vector<double>& strengths, std::uint64_t draws,
                               std::uint64_t seeds, std::uint64_t max_rejections,
                               const BatteryOptions& opts) {
  return repeated_choice(fmt::format("probit-softmax:{}", join(strengths)),
                         default_spec(Family::Gumbel1), strengths, draws, seeds, max_rejections,
                         opts);
}

CriterionResult max_stability(double a1, double a2, std::uint64_t draws, const BatteryOptions& opts) {
  SplitMix64 rng(stream_seed(opts, "max-stability"));
  std::vector<double> pairs(draws), direct(draws), low(draws), high(draws);
  for (std::uint64_t i = 0; i < draws; ++i) {
    pairs[i] = std::max(key_canonical(a1, rng.unit()).value, key_canonical(a2, rng.unit()).value);
    direct[i] = key_canonical(a1 + a2, rng.unit()).value;
    low[i] = key_canonical(1.0, rng.unit()).value;
    high[i] = key_canonical(4.0, rng.unit()).value;
  }
  const auto same = ks_two_sample(pairs, direct);
  const auto control = ks_two_sample(low, high);
  CriterionResult out;
  out.name = fmt::format("max-stability:{}+{}_vs_{}", a1, a2, a1 + a2);
  out.passed = !same.rejects(kSignificance) && control.rejects(kSignificance);
  out.p_value = same.p_value;
  out.detail = fmt::format("D={:.5f} p={:.4g}; control 1 vs 4: D={:.5f} p={:.3g}", same.statistic,
                           same.p_value, control.statistic, control.p_value);
  return out;
}

CriterionResult representation_law(double alpha, std::uint64_t draws, const BatteryOptions& opts) {
  SplitMix64 rng(stream_seed(opts, "representation", static_cast<std::uint64_t>(alpha * 1000)));
  std::vector<double> keys(draws);
  for (auto& k : keys) k = key_canonical(alpha, rng.unit()).value;
  const auto r = ks_one_sample(keys, [alpha](double t) { return std::pow(std::clamp(t, 0.0, 1.0), alpha); });
  CriterionResult out;
  out.name = fmt::format("representation-law:alpha={}", alpha);
  out.passed = !r.rejects(kSignificance);
  out.p_value = r.p_value;
  out.detail = fmt::format("D={:.5f} N={}", r.statistic, draws);
  return out;
}

CriterionResult canonical_equivalence(std::uint64_t instances, const BatteryOptions& opts) {
  SplitMix64 rng(stream_seed(opts, "canonical-equivalence"));
  std::uint64_t mismatches = 0;
  for (std::uint64_t inst = 0; inst < instances; ++inst) {
    const std::size_t n = 2 + rng.below(9);
    std::size_t best_c = 0, best_g = 0, best_f = 0, best_e = 0;
    Key kc, kg, kf, ke;
    for (std::size_t i = 0; i < n; ++i) {
      const double alpha = std::exp(8.0 * rng.unit() - 4.0);
      const double u = rng.unit();
      const Key c = key_canonical(alpha, u);
      const Key g = key_gumbel1(std::log(alpha), 1.0, u);
      const Key f = key_frechet2(alpha, 1.0, u);
      const Key e = key_expmin(alpha, u);
      if (i == 0 || beats(Orientation::Max, c, kc)) { best_c = i; kc = c; }
      if (i == 0 || beats(Orientation::Max, g, kg)) { best_g = i; kg = g; }
      if (i == 0 || beats(Orientation::Max, f, kf)) { best_f = i; kf = f; }
      if (i == 0 || beats(Orientation::Min, e, ke)) { best_e = i; ke = e; }
    }
    if (best_c != best_g || best_c != best_f || best_c != best_e) ++mismatches;
  }
  CriterionResult out;
  out.name = "canonical-equivalence";
  out.passed = mismatches == 0;
  out.detail = fmt::format("{} mismatches over {} instances", mismatches, instances);
  return out;
}

CriterionResult alias_race_agreement(const std::vector<double>& weights, std::uint64_t draws,
                                     const BatteryOptions& opts) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < weights.size(); ++i) labels.push_back(experiment_label(i));
  const auto table = build_weight_table(labels, weights);
  SplitMix64 rng(stream_seed(opts, "alias"));
  std::vector<std::uint64_t> alias_counts(weights.size(), 0);
  for (std::uint64_t i = 0; i < draws; ++i) {
    const double u1 = rng.unit();
    ++alias_counts[sample_alias_index(table, u1, rng.unit())];
  }
  const ModelSpec spec = default_spec(Family::Canonical);
  const auto race_counts = tally_choices(spec, weights, draws, stream_seed(opts, "race"), opts.threads);
  const auto probs = choice_probabilities(spec, weights);
  const auto a = chi_square_gof(alias_counts, probs);
  const auto r = chi_square_gof(race_counts, probs);
  const auto both = chi_square_two_sample(alias_counts, race_counts);
  CriterionResult out;
  out.name = fmt::format("alias-vs-race:{}", join(weights));
  out.passed = !a.rejects(kSignificance) && !r.rejects(kSignificance) && !both.rejects(kSignificance);
  out.p_value = both.p_value;
  out.detail = fmt::format("alias p={:.4g}, race p={:.4g}, two-sample p={:.4g}", a.p_value,
                           r.p_value, both.p_value);
  return out;
}

CriterionResult dynamic_scratch(Family family, std::uint64_t steps, std::size_t groups,
                                std::uint64_t check_every, const BatteryOptions& opts) {
  const ModelSpec spec = default_spec(family);
  DynamicTable table(spec, SeedContext{opts.seed, 0});
  SplitMix64 rng(stream_seed(opts, "dynamic", static_cast<std::uint64_t>(family)));
  constexpr std::uint64_t kLabels = 20;
  std::set<std::pair<std::uint64_t, std::uint64_t>> live;
  std::uint64_t mismatches = 0, checks = 0;
  for (std::uint64_t step = 1; step <= steps; ++step) {
    const auto g = rng.below(groups);
    const auto l = rng.below(kLabels);
    const auto gid = fmt::format("g{:03}", g);
    const auto label = fmt::format("q{:02}", l);
    if (live.count({g, l}) && rng.unit() < 0.35) {
      table.remove(gid, label);
      live.erase({g, l});
    } else {
      const double alpha = std::exp(4.0 * rng.unit() - 2.0);
      table.upsert(gid, label, alpha_to_strength(spec, alpha));
      live.insert({g, l});
    }
    if (step % check_every == 0 || step == steps) {
      ++checks;
      const auto rows = table.keyed_rows();
      if (!same_winners(table.winners(), reduce_winners(rows, spec.orientation()))) ++mismatches;
    }
  }
  CriterionResult out;
  out.name = fmt::format("dynamic-vs-scratch:{}", to_string(family));
  out.passed = mismatches == 0;
  out.detail = fmt::format("{} mismatches over {} checks, {} steps", mismatches, checks, steps);
  return out;
}

std::vector<CriterionResult> run_battery(const BatteryOptions& opts) {
  const std::uint64_t choice_n = opts.quick ? 6000 : 60000;
  const std::uint64_t seeds = opts.quick ? 3 : 20;
  const std::uint64_t ks_n = opts.quick ? 4000 : 20000;
  const std::uint64_t steps = opts.quick ? 2000 : 10000;

  std::vector<CriterionResult> out;
  const std::vector<std::vector<double>> weight_sets = {{1, 1}, {1, 2, 3}, {0.1, 1, 10}};
  for (Family f : {Family::Canonical, Family::Gumbel1, Family::Frechet2, Family::NegExp, Family::ExpMin}) {
    for (const auto& w : weight_sets) out.push_back(choice_law(f, w, choice_n, seeds, 1, opts));
  }
  out.push_back(probit_softmax({0, 1, 2}, choice_n, seeds, 1, opts));
  out.push_back(max_stability(1, 2, ks_n, opts));
  for (double a : {0.5, 1.0, 3.0}) out.push_back(representation_law(a, opts.quick ? 2000 : 10000, opts));
  out.push_back(canonical_equivalence(opts.quick ? 2000 : 10000, opts));
  out.push_back(alias_race_agreement({1, 2, 3}, choice_n, opts));
  for (Family f : {Family::Canonical, Family::Gumbel1, Family::Frechet2, Family::NegExp, Family::ExpMin}) {
    out.push_back(dynamic_scratch(f, steps, 50, 100, opts));
  }
  return out;
}

}  // namespace keyrace::validation
