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

#include "keyrace/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>
#include <json.hpp>

#include "keyrace/errors.hpp"
#include "keyrace/parallel.hpp"
#include "keyrace/sampler.hpp"

namespace keyrace {
namespace {

constexpr int kMaxIterations = 100000;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

// P(a, x) by its power series; converges quickly for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by the modified Lentz continued fraction; for x >= a + 1.
double gamma_q_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

void check_gamma_args(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) {
    throw DomainError(fmt::format("incomplete gamma: need a > 0 and x >= 0, got a={} x={}", a, x));
  }
}

void fill_levels(GofReport& r) {
  for (double s : kReportedLevels) r.reject_at[s] = r.rejects(s);
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_fraction(a, x);
}

double chi_square_sf(double statistic, double dof) {
  if (dof <= 0.0) return 1.0;
  return regularized_gamma_q(dof / 2.0, std::max(statistic, 0.0) / 2.0);
}

GofReport chi_square_gof(std::span<const std::uint64_t> observed,
                         std::span<const double> expected_probs) {
  if (observed.size() != expected_probs.size() || observed.empty()) {
    throw PreconditionError("chi_square_gof: observed and expected differ in length");
  }
  const double sum_p = std::accumulate(expected_probs.begin(), expected_probs.end(), 0.0);
  if (std::fabs(sum_p - 1.0) > 0x1.0p-30) {
    throw PreconditionError(fmt::format("chi_square_gof: probabilities sum to {}, not 1", sum_p));
  }
  const auto n = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  GofReport r;
  r.test = "chi-square";
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = n * expected_probs[i];
    if (expected < 5.0) {
      throw PreconditionError(fmt::format(
          "chi_square_gof: expected count {} in category {} is below 5", expected, i));
    }
    const double diff = static_cast<double>(observed[i]) - expected;
    r.statistic += diff * diff / expected;
  }
  r.dof_or_n = static_cast<double>(observed.size() - 1);
  r.p_value = chi_square_sf(r.statistic, r.dof_or_n);
  fill_levels(r);
  return r;
}

GofReport chi_square_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (a.size() != b.size() || a.empty()) {
    throw PreconditionError("chi_square_two_sample: count vectors differ in length");
  }
  const auto na = static_cast<double>(std::accumulate(a.begin(), a.end(), std::uint64_t{0}));
  const auto nb = static_cast<double>(std::accumulate(b.begin(), b.end(), std::uint64_t{0}));
  const double total = na + nb;
  GofReport r;
  r.test = "chi-square-two-sample";
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double column = static_cast<double>(a[i] + b[i]);
    const double ea = na * column / total;
    const double eb = nb * column / total;
    if (ea < 5.0 || eb < 5.0) {
      throw PreconditionError(
          fmt::format("chi_square_two_sample: expected count below 5 in category {}", i));
    }
    const double da = static_cast<double>(a[i]) - ea;
    const double db = static_cast<double>(b[i]) - eb;
    r.statistic += da * da / ea + db * db / eb;
  }
  r.dof_or_n = static_cast<double>(a.size() - 1);
  r.p_value = chi_square_sf(r.statistic, r.dof_or_n);
  fill_levels(r);
  return r;
}

double kolmogorov_sf(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < 1.0) {
    // The alternating series converges slowly here; use the dual theta form
    // of the CDF, which converges fast for small lambda.
    constexpr double kPi = 3.14159265358979323846;
    const double factor = -kPi * kPi / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1; k < 100; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(factor * odd * odd);
      cdf += term;
      if (term < 1e-10 * cdf) break;
    }
    cdf *= std::sqrt(2.0 * kPi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k < 1000; ++k) {
    const double term = 2.0 * std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-10) break;
    sign = -sign;
  }
  return std::clamp(sum, 0.0, 1.0);
}

GofReport ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf) {
  const std::size_t n = samples.size();
  if (n < 100) throw PreconditionError(fmt::format("ks_one_sample: need N >= 100, got {}", n));
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto nd = static_cast<double>(n);
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / nd - f, f - static_cast<double>(i) / nd});
  }
  GofReport r;
  r.test = "ks-one-sample";
  r.statistic = d;
  r.dof_or_n = nd;
  r.p_value = kolmogorov_sf(std::sqrt(nd) * d);
  fill_levels(r);
  return r;
}

GofReport ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 100 || b.size() < 100) {
    throw PreconditionError(
        fmt::format("ks_two_sample: need both N >= 100, got {} and {}", a.size(), b.size()));
  }
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const auto n = static_cast<double>(x.size());
  const auto m = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  const double effective = n * m / (n + m);
  GofReport r;
  r.test = "ks-two-sample";
  r.statistic = d;
  r.dof_or_n = effective;
  r.p_value = kolmogorov_sf(std::sqrt(effective) * d);
  fill_levels(r);
  return r;
}

std::string experiment_label(std::size_t i) { return fmt::format("c{:04}", i); }

std::vector<std::uint64_t> tally_choices(const ModelSpec& spec, std::span<const double> strengths,
                                         std::uint64_t replicates, std::uint64_t seed,
                                         unsigned threads) {
  spec.validate();
  const std::size_t k = strengths.size();
  if (k == 0) throw DomainError("tally_choices: no outcomes");
  std::vector<std::string> labels(k);
  for (std::size_t i = 0; i < k; ++i) labels[i] = experiment_label(i);
  const Orientation orientation = spec.orientation();
  const std::string group = "experiment";

  const std::size_t shards = std::max<std::size_t>(
      1, std::min<std::size_t>(threads, static_cast<std::size_t>(replicates)));
  std::vector<std::vector<std::uint64_t>> partial(shards, std::vector<std::uint64_t>(k, 0));
  detail::parallel_chunks(static_cast<std::size_t>(replicates), threads,
                          [&](std::size_t c, std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const SeedContext ctx{seed, r};
      std::size_t best = 0;
      Key best_key = make_key(spec, strengths[0], derive_uniform(ctx, group, labels[0]));
      for (std::size_t i = 1; i < k; ++i) {
        const Key key = make_key(spec, strengths[i], derive_uniform(ctx, group, labels[i]));
        if (outranks(orientation, key, labels[i], best_key, labels[best])) {
          best = i;
          best_key = key;
        }
      }
      ++partial[c][best];
    }
  });
  std::vector<std::uint64_t> counts(k, 0);
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < k; ++i) counts[i] += p[i];
  }
  return counts;
}

std::vector<double> choice_probabilities(const ModelSpec& spec, std::span<const double> strengths) {
  std::vector<double> alpha(strengths.size());
  for (std::size_t i = 0; i < strengths.size(); ++i) alpha[i] = strength_to_alpha(spec, strengths[i]);
  const double total = std::accumulate(alpha.begin(), alpha.end(), 0.0);
  for (double& a : alpha) a /= total;
  return alpha;
}

GofReport run_choice_experiment(const ModelSpec& spec, std::span<const double> strengths,
                                std::uint64_t replicates, std::uint64_t seed, unsigned threads) {
  const auto probs = choice_probabilities(spec, strengths);
  const auto counts = tally_choices(spec, strengths, replicates, seed, threads);
  GofReport r = chi_square_gof(counts, probs);
  r.test = fmt::format("choice-{}", to_string(spec.family));
  return r;
}

std::string to_line(const GofReport& report) {
  return fmt::format("{} statistic={:.10g} dof_or_n={:.10g} p={:.6g}", report.test,
                     report.statistic, report.dof_or_n, report.p_value);
}

std::string to_json(const GofReport& report) {
  nlohmann::json j;
  j["test"] = report.test;
  j["statistic"] = report.statistic;
  j["dof_or_n"] = report.dof_or_n;
  j["p_value"] = report.p_value;
  auto& levels = j["reject_at"] = nlohmann::json::object();
  for (const auto& [level, rejected] : report.reject_at) levels[fmt::format("{:g}", level)] = rejected;
  return j.dump();
}

}  // namespace keyrace
