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

// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "fixtures.hpp"
#include "keyrace/cli.hpp"
#include "keyrace/stats.hpp"
#include "keyrace/uniform.hpp"
#include "keyrace/validation.hpp"
#include "reference_gamma.hpp"

using namespace keyrace;
namespace v = keyrace::validation;

namespace {

// Tolerances and sizes.
constexpr double kAlpha = 1e-3;
constexpr std::uint64_t kChoiceDraws = 60000;
constexpr std::uint64_t kChoiceSeeds = 20;
constexpr std::uint64_t kMaxRejections = 1;
constexpr std::uint64_t kKsDraws = 20000;
constexpr std::uint64_t kRepresentationDraws = 10000;
constexpr std::uint64_t kEquivalenceInstances = 10000;
constexpr std::uint64_t kDynamicSteps = 10000;
constexpr std::size_t kDynamicGroups = 50;
constexpr std::uint64_t kDynamicCheckEvery = 100;
constexpr std::size_t kDeterminismRows = 100000;
constexpr double kWorkedExampleSeconds = 1.0;
constexpr double kClosedFormTolerance = 1e-8;
constexpr double kGammaRelTolerance = 1e-6;

int failures = 0;

void report(int n, const std::string& name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("CRITERION %d %s %s  %s\n", n, name.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void worked_example() {
  cli::RunConfig config;
  config.model = "gumbel1";
  config.inject_keys = true;
  const auto input = slurp(testing::fixture_path("worked_example.csv"));
  const auto start = std::chrono::steady_clock::now();
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::cmd_sample(config, in, out, err);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string expected = "ID,QUAL,KEY\n#1,RED,5.612483956\n#2,WHITE,4.143186699\n"
                               "#3,WHITE,0.524126732\n#4,YELLOW,3.083588566\n";
  report(1, "worked-example", code == 0 && out.str() == expected && secs < kWorkedExampleSeconds,
         fmt::format("exit={} exact={} {:.4f}s", code, out.str() == expected, secs));
}

void add(std::vector<v::CriterionResult>& all, v::CriterionResult r) {
  std::printf("    %s %s p=%.4g  %s\n", r.name.c_str(), r.passed ? "pass" : "fail", r.p_value, r.detail.c_str());
  all.push_back(std::move(r));
}

void summarize(int n, const std::string& name, const std::vector<v::CriterionResult>& parts) {
  std::size_t passed = 0;
  for (const auto& r : parts) passed += r.passed;
  report(n, name, passed == parts.size(), fmt::format("{}/{} sub-checks", passed, parts.size()));
}

void determinism() {
  SplitMix64 rng(2718);
  std::string input = "ID,QUAL,Strength\n";
  for (std::size_t i = 0; i < kDeterminismRows; ++i) {
    input += fmt::format("g{},q{},{}\n", rng.below(1000), i, std::exp(4.0 * rng.unit() - 2.0));
  }
  bool all_same = true;
  std::string detail;
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    std::string reference;
    for (unsigned threads : {1u, 4u, 8u}) {
      cli::RunConfig config;
      config.seed = seed;
      config.threads = threads;
      config.with_key = true;
      std::istringstream in(input);
      std::ostringstream out, err;
      if (cli::cmd_sample(config, in, out, err) != 0) all_same = false;
      if (threads == 1) {
        reference = out.str();
      } else if (out.str() != reference) {
        all_same = false;
      }
    }
    detail += fmt::format("seed {}: {} bytes; ", seed, reference.size());
  }
  report(9, "parallel-determinism", all_same, detail);
}

void kernels() {
  const double p = chi_square_sf(2.0, 2.0);
  const bool closed = std::fabs(p - std::exp(-1.0)) < kClosedFormTolerance;
  double worst = 0.0;
  for (const auto& g : testing::kGammaQ) {
    worst = std::max(worst, std::fabs(regularized_gamma_q(g.a, g.x) - g.q) / g.q);
  }
  report(10, "statistical-kernels", closed && worst <= kGammaRelTolerance,
         fmt::format("|sf(2,2)-1/e|={:.3g} worst rel err over {} points={:.3g}",
                     std::fabs(p - std::exp(-1.0)), testing::kGammaQ.size(), worst));
}

}  // namespace

int main() {
  const v::BatteryOptions opts{20260101, false, 1};

  worked_example();

  {
    std::vector<v::CriterionResult> parts;
    for (Family f : {Family::Canonical, Family::Gumbel1, Family::Frechet2, Family::NegExp, Family::ExpMin}) {
      for (const auto& w : std::vector<std::vector<double>>{{1, 1}, {1, 2, 3}, {0.1, 1, 10}}) {
        add(parts, v::choice_law(f, w, kChoiceDraws, kChoiceSeeds, kMaxRejections, opts));
      }
    }
    summarize(2, "choice-probability-law", parts);
  }
  {
    std::vector<v::CriterionResult> parts;
    add(parts, v::probit_softmax({0, 1, 2}, kChoiceDraws, kChoiceSeeds, kMaxRejections, opts));
    const auto probs = choice_probabilities(default_spec(Family::Gumbel1), std::vector<double>{0, 1, 2});
    const bool exact = std::fabs(probs[0] - 0.0900305731704) < 1e-12 &&
                       std::fabs(probs[1] - 0.244728471055) < 1e-12 &&
                       std::fabs(probs[2] - 0.665240955775) < 1e-12;
    report(3, "probit-softmax", exact && parts[0].passed,
           fmt::format("target ({:.4f}, {:.4f}, {:.4f})", probs[0], probs[1], probs[2]));
  }
  {
    std::vector<v::CriterionResult> parts;
    add(parts, v::max_stability(1, 2, kKsDraws, opts));
    summarize(4, "max-stability", parts);
  }
  {
    std::vector<v::CriterionResult> parts;
    for (double a : {0.5, 1.0, 3.0}) add(parts, v::representation_law(a, kRepresentationDraws, opts));
    summarize(5, "representation-law", parts);
  }
  {
    std::vector<v::CriterionResult> parts;
    add(parts, v::canonical_equivalence(kEquivalenceInstances, opts));
    summarize(6, "canonical-equivalence", parts);
  }
  {
    std::vector<v::CriterionResult> parts;
    for (Family f : {Family::Canonical, Family::Gumbel1, Family::Frechet2, Family::NegExp, Family::ExpMin}) {
      add(parts, v::dynamic_scratch(f, kDynamicSteps, kDynamicGroups, kDynamicCheckEvery, opts));
    }
    summarize(7, "dynamic-vs-scratch", parts);
  }
  {
    std::vector<v::CriterionResult> parts;
    add(parts, v::alias_race_agreement({1, 2, 3}, kChoiceDraws, opts));
    summarize(8, "alias-race-agreement", parts);
  }
  determinism();
  kernels();

  std::printf("%s: %d of 10 criteria failed (significance %g)\n", failures ? "FAILED" : "OK", failures, kAlpha);
  return failures ? 1 : 0;
}
