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

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "keyrace/baselines.hpp"
#include "keyrace/errors.hpp"
#include "keyrace/stats.hpp"
#include "keyrace/uniform.hpp"

using namespace keyrace;

namespace {

std::vector<std::string> labels_for(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(fmt::format("L{}", i));
  return out;
}

void check_reconstruction(const std::vector<double>& weights) {
  const auto labels = labels_for(weights.size());
  const auto table = build_weight_table(labels, weights);
  double total = 0;
  for (double w : weights) total += w;
  const auto mass = alias_mass(table);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    REQUIRE(std::fabs(mass[i] - weights[i] / total) <= 0x1.0p-40);
    const double prev = i ? table.cumulative[i - 1] : 0.0;
    REQUIRE(std::fabs(table.cumulative[i] - prev - weights[i] / total) <= 0x1.0p-40);
  }
  CHECK(table.cumulative.back() == 1.0);
}

}  // namespace

TEST_CASE("alias tables reconstruct their weights") {
  check_reconstruction({1, 1});
  check_reconstruction({1, 2, 3});
  check_reconstruction({7});
  check_reconstruction({1e-6, 1, 1e6});

  SplitMix64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> w(1 + rng.below(1000));
    for (auto& x : w) x = std::exp(6.0 * rng.unit() - 3.0);
    check_reconstruction(w);
  }
}

TEST_CASE("single label always wins") {
  const std::vector<std::string> labels{"only"};
  const std::vector<double> weights{3.0};
  const auto table = build_weight_table(labels, weights);
  CHECK(sample_alias(table, 0.0, 0.999) == "only");
  CHECK(sample_alias(table, 0.999, 0.0) == "only");
  CHECK(sample_inverse(table, 0.5, SearchStrategy::Linear) == "only");
  CHECK(sample_inverse(table, 0.5, SearchStrategy::Bisection) == "only");
}

TEST_CASE("inverse-CDF search") {
  const auto labels = labels_for(3);
  const std::vector<double> weights{1, 2, 3};
  const auto table = build_weight_table(labels, weights);
  CHECK(sample_inverse(table, 0.4, SearchStrategy::Linear) == "L1");
  CHECK(sample_inverse(table, 0.4, SearchStrategy::Bisection) == "L1");
  CHECK(sample_inverse_index(table, 0.0, SearchStrategy::Bisection) == 0);
  CHECK(sample_inverse_index(table, 0.9999, SearchStrategy::Bisection) == 2);

  SplitMix64 rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> w(1 + rng.below(50));
    for (auto& x : w) x = 0.01 + rng.unit();
    const auto t = build_weight_table(labels_for(w.size()), w);
    const double u = rng.unit();
    REQUIRE(sample_inverse_index(t, u, SearchStrategy::Linear) ==
            sample_inverse_index(t, u, SearchStrategy::Bisection));
  }
}

TEST_CASE("alias sampling frequencies") {
  SplitMix64 rng(77);
  {
    const auto table = build_weight_table(labels_for(2), std::vector<double>{1, 3});
    const int n = 100000;
    int first = 0;
    for (int i = 0; i < n; ++i) {
      const double u1 = rng.unit();
      if (sample_alias_index(table, u1, rng.unit()) == 0) ++first;
    }
    CHECK(std::fabs(first - n * 0.25) < 3 * std::sqrt(n * 0.25 * 0.75));
  }
  {
    const std::vector<double> w{1, 2, 3};
    const auto table = build_weight_table(labels_for(3), w);
    std::vector<std::uint64_t> counts(3, 0);
    for (int i = 0; i < 60000; ++i) {
      const double u1 = rng.unit();
      ++counts[sample_alias_index(table, u1, rng.unit())];
    }
    const std::vector<double> probs{1.0 / 6, 2.0 / 6, 3.0 / 6};
    CHECK(!chi_square_gof(counts, probs).rejects(1e-3));
  }
}

TEST_CASE("weight table errors") {
  const std::vector<std::string> none;
  const std::vector<double> empty;
  CHECK_THROWS_AS(build_weight_table(none, empty), DomainError);
  CHECK_THROWS_AS(build_weight_table(labels_for(2), std::vector<double>{1, 0}), DomainError);
  CHECK_THROWS_AS(build_weight_table(labels_for(2), std::vector<double>{1, -2}), DomainError);
  CHECK_THROWS_AS(build_weight_table(labels_for(2), std::vector<double>{1, NAN}), DomainError);
  CHECK_THROWS_AS(build_weight_table(labels_for(2), std::vector<double>{1}), std::invalid_argument);
  const std::vector<std::string> dup{"a", "a"};
  CHECK_THROWS_AS(build_weight_table(dup, std::vector<double>{1, 2}), DomainError);
}
