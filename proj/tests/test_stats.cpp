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
#include <vector>

#include <json.hpp>

#include "keyrace/errors.hpp"
#include "keyrace/stats.hpp"
#include "keyrace/uniform.hpp"
#include "reference_gamma.hpp"

using namespace keyrace;

TEST_CASE("chi-square tail") {
  CHECK(std::fabs(chi_square_sf(2.0, 2.0) - std::exp(-1.0)) < 1e-8);
  CHECK(std::fabs(chi_square_sf(4.0, 3.0) - 0.2614641299491106222) < 1e-12);
  CHECK(chi_square_sf(0.0, 5.0) == 1.0);
  for (const auto& p : testing::kGammaQ) {
    const double q = regularized_gamma_q(p.a, p.x);
    REQUIRE_MESSAGE(std::fabs(q - p.q) <= 1e-6 * p.q, "a=", p.a, " x=", p.x, " got ", q);
    REQUIRE(std::fabs(regularized_gamma_p(p.a, p.x) + q - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(regularized_gamma_q(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(regularized_gamma_q(1.0, -1.0), DomainError);
}

TEST_CASE("chi_square_gof") {
  const std::vector<std::uint64_t> exact{100, 200, 300};
  const std::vector<double> probs{1.0 / 6, 2.0 / 6, 3.0 / 6};
  const auto r = chi_square_gof(exact, probs);
  CHECK(r.statistic == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.dof_or_n == 2);
  CHECK(r.p_value == doctest::Approx(1.0));
  CHECK_FALSE(r.reject_at.at(0.05));

  const std::vector<std::uint64_t> skewed{300, 200, 100};
  const auto bad = chi_square_gof(skewed, probs);
  CHECK(bad.rejects(1e-3));
  CHECK(bad.reject_at.at(0.001));

  SUBCASE("preconditions") {
    const std::vector<double> off{0.2, 0.3, 0.4};
    CHECK_THROWS_AS(chi_square_gof(exact, off), PreconditionError);
    const std::vector<double> two{0.5, 0.5};
    CHECK_THROWS_AS(chi_square_gof(exact, two), PreconditionError);
    const std::vector<std::uint64_t> tiny{1, 2, 3};
    CHECK_THROWS_AS(chi_square_gof(tiny, probs), PreconditionError);
  }
}

TEST_CASE("chi_square_two_sample") {
  const std::vector<std::uint64_t> a{100, 200, 300};
  CHECK(chi_square_two_sample(a, a).statistic == doctest::Approx(0.0));
  const std::vector<std::uint64_t> doubled{200, 400, 600};
  CHECK(chi_square_two_sample(a, doubled).p_value == doctest::Approx(1.0));
  const std::vector<std::uint64_t> c{300, 200, 100};
  CHECK(chi_square_two_sample(a, c).rejects(1e-3));
  const std::vector<std::uint64_t> short_v{1, 2};
  CHECK_THROWS_AS(chi_square_two_sample(a, short_v), PreconditionError);
}

TEST_CASE("kolmogorov tail") {
  CHECK(kolmogorov_sf(0.0) == 1.0);
  // Known quantiles of the Kolmogorov distribution.
  CHECK(kolmogorov_sf(1.3580986) == doctest::Approx(0.05).epsilon(1e-5));
  CHECK(kolmogorov_sf(1.9495) == doctest::Approx(0.001).epsilon(1e-3));
  CHECK(kolmogorov_sf(0.8275735) == doctest::Approx(0.5).epsilon(1e-5));
  // Both series agree where they meet.
  CHECK(kolmogorov_sf(std::nextafter(1.0, 0.0)) == doctest::Approx(kolmogorov_sf(1.0)).epsilon(1e-9));
  double prev = 1.0;
  for (double l = 0.05; l < 3.0; l += 0.05) {
    const double p = kolmogorov_sf(l);
    REQUIRE(p <= prev);
    prev = p;
  }
}

TEST_CASE("ks tests") {
  const auto uniform_cdf = [](double t) { return std::clamp(t, 0.0, 1.0); };
  std::vector<double> grid(1000);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = (i + 0.5) / grid.size();
  const auto perfect = ks_one_sample(grid, uniform_cdf);
  CHECK(perfect.statistic <= 1.0 / grid.size());
  CHECK(perfect.dof_or_n == 1000);
  CHECK_FALSE(perfect.rejects(0.05));

  SplitMix64 rng(3);
  std::vector<double> squared(5000);
  for (auto& x : squared) x = rng.unit() * rng.unit();
  CHECK(ks_one_sample(squared, uniform_cdf).rejects(1e-3));

  const std::vector<double> few(50, 0.5);
  CHECK_THROWS_AS(ks_one_sample(few, uniform_cdf), PreconditionError);
  CHECK_THROWS_AS(ks_two_sample(grid, few), PreconditionError);

  SUBCASE("two-sample") {
    const auto same = ks_two_sample(grid, grid);
    CHECK(same.statistic == 0.0);
    CHECK(same.p_value == 1.0);
    CHECK(same.dof_or_n == doctest::Approx(500.0));
    std::vector<double> a(5000), b(5000);
    for (auto& x : a) x = std::pow(rng.unit(), 1.0);
    for (auto& x : b) x = std::pow(rng.unit(), 1.0 / 4.0);
    CHECK(ks_two_sample(a, b).rejects(1e-3));
  }
}

TEST_CASE("choice experiments") {
  const ModelSpec canonical{Family::Canonical};
  const std::vector<double> w{1, 2, 3};
  const auto probs = choice_probabilities(canonical, w);
  CHECK(probs[0] == doctest::Approx(1.0 / 6));
  CHECK(probs[2] == doctest::Approx(0.5));

  const auto t1 = tally_choices(canonical, w, 20000, 8, 1);
  CHECK(t1 == tally_choices(canonical, w, 20000, 8, 3));
  CHECK(t1 == tally_choices(canonical, w, 20000, 8, 16));
  CHECK(t1 != tally_choices(canonical, w, 20000, 9, 1));
  std::uint64_t total = 0;
  for (auto c : t1) total += c;
  CHECK(total == 20000);

  const auto r = run_choice_experiment(canonical, w, 60000, 1);
  CHECK(r.test == "choice-canonical");
  CHECK(r.dof_or_n == 2);

  SUBCASE("power: a wrong law is rejected") {
    const std::vector<std::uint64_t> counts = tally_choices(canonical, w, 60000, 2);
    const std::vector<double> uniform{1.0 / 3, 1.0 / 3, 1.0 / 3};
    CHECK(chi_square_gof(counts, uniform).rejects(1e-3));
  }
  SUBCASE("the correct law survives across seeds") {
    int rejections = 0;
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
      if (run_choice_experiment(canonical, w, 20000, seed).rejects(1e-3)) ++rejections;
    }
    CHECK(rejections <= 1);
  }
}

TEST_CASE("report serialization") {
  const std::vector<std::uint64_t> counts{100, 200, 300};
  const std::vector<double> probs{1.0 / 6, 2.0 / 6, 3.0 / 6};
  const auto r = chi_square_gof(counts, probs);
  CHECK(to_line(r).rfind("chi-square statistic=", 0) == 0);
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["test"] == "chi-square");
  CHECK(j["dof_or_n"] == 2.0);
  CHECK(j["p_value"].get<double>() == doctest::Approx(1.0));
  CHECK(j["reject_at"]["0.05"] == false);
  CHECK(j["reject_at"].size() == 3);
}
