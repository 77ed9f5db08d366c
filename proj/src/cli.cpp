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

#include "keyrace/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "keyrace/baselines.hpp"
#include "keyrace/csv.hpp"
#include "keyrace/dynamic.hpp"
#include "keyrace/errors.hpp"
#include "keyrace/sampler.hpp"
#include "keyrace/stats.hpp"
#include "keyrace/uniform.hpp"
#include "keyrace/validation.hpp"

namespace keyrace::cli {
namespace {

void report_domain_error(std::ostream& err, const DomainError& e) {
  if (dynamic_cast<const DegenerateWeightError*>(&e)) {
    err << "error: degenerate weight: " << e.what() << '\n';
  } else {
    err << "error: " << e.what() << '\n';
  }
}

std::string format_winner_line(const GroupWinner& w, bool with_key) {
  return with_key ? fmt::format("{},{},{}", w.group_id, w.label, w.key.order)
                  : fmt::format("{},{}", w.group_id, w.label);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

ModelSpec model_spec(const RunConfig& config) {
  ModelSpec spec = default_spec(parse_family(config.model));
  spec.scale_c = config.scale_c;
  if (config.offset_d) spec.offset_d = *config.offset_d;
  spec.validate();
  return spec;
}

int cmd_sample(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  ModelSpec spec;
  try {
    spec = model_spec(config);
  } catch (const DomainError& e) {
    report_domain_error(err, e);
    return kDomainError;
  }
  csv::Table table;
  try {
    table = csv::read_table(in, config.inject_keys);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }

  const bool with_key = config.with_key || config.inject_keys;
  const bool many = config.replicates > 1;
  std::string buffer = many ? "REPLICATE,ID,QUAL" : "ID,QUAL";
  buffer += with_key ? ",KEY\n" : "\n";
  try {
    if (config.inject_keys) {
      std::vector<KeyedRow> keyed;
      keyed.reserve(table.rows.size());
      for (std::size_t i = 0; i < table.rows.size(); ++i) {
        keyed.push_back(KeyedRow{table.rows[i], 0.0, Key::plain(table.keys[i])});
      }
      for (const auto& [id, w] : reduce_winners(keyed, spec.orientation())) {
        buffer += format_winner_line(w, with_key) + '\n';
      }
    } else {
      for (std::uint64_t r = 0; r < config.replicates; ++r) {
        const auto winners = sample(table.rows, spec, SeedContext{config.seed, r}, config.threads);
        for (const auto& [id, w] : winners) {
          if (many) buffer += fmt::format("{},", r);
          buffer += format_winner_line(w, with_key) + '\n';
        }
      }
    }
  } catch (const DomainError& e) {
    report_domain_error(err, e);
    return kDomainError;
  }
  out << buffer;
  return kOk;
}

int cmd_update(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  ModelSpec spec;
  try {
    spec = model_spec(config);
  } catch (const DomainError& e) {
    report_domain_error(err, e);
    return kDomainError;
  }
  DynamicTable table(spec, SeedContext{config.seed, 0});
  out << "ID,QUAL,KEY,CASE,COMPARISONS,RESCAN\n";

  std::size_t warnings = 0;
  std::size_t line_no = 0;
  std::string line;
  const auto warn = [&](const std::string& what) {
    ++warnings;
    err << fmt::format("warning: line {}: {}\n", line_no, what);
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    if (text.empty()) continue;

    const auto space = text.find(' ');
    const std::string_view verb = text.substr(0, space);
    const auto fields = space == std::string_view::npos ? std::vector<std::string_view>{}
                                                        : csv::split(text.substr(space + 1));
    try {
      ChangeReport report;
      std::string_view group;
      if (verb == "UPSERT") {
        const std::size_t want = config.inject_keys ? 4 : 3;
        if (fields.size() != want) {
          warn(fmt::format("UPSERT expects {} fields", want));
          continue;
        }
        const auto strength = csv::parse_double(fields[2]);
        if (!strength) {
          warn(fmt::format("bad strength '{}'", fields[2]));
          continue;
        }
        group = fields[0];
        if (config.inject_keys) {
          const auto key = csv::parse_double(fields[3]);
          if (!key) {
            warn(fmt::format("bad key '{}'", fields[3]));
            continue;
          }
          report = table.upsert_with_key(fields[0], fields[1], *strength, Key::plain(*key));
        } else {
          report = table.upsert(fields[0], fields[1], *strength);
        }
      } else if (verb == "DELETE") {
        if (fields.size() != 2) {
          warn("DELETE expects 2 fields");
          continue;
        }
        group = fields[0];
        report = table.remove(fields[0], fields[1]);
      } else {
        warn(fmt::format("unknown command '{}'", verb));
        continue;
      }
      const auto w = table.winner(group);
      if (w) {
        out << fmt::format("{},{},{},{},{},{}\n", w->group_id, w->label, w->key.order,
                           to_string(report.kind), report.comparisons, report.rescanned ? 1 : 0);
      } else {
        out << fmt::format("{},,,{},{},{}\n", group, to_string(report.kind), report.comparisons,
                           report.rescanned ? 1 : 0);
      }
    } catch (const DomainError& e) {
      warn(e.what());
    } catch (const NotFoundError& e) {
      warn(e.what());
    }
  }

  if (!config.dump_table.empty()) {
    std::ofstream dump(config.dump_table);
    if (!dump) {
      err << "warning: cannot write " << config.dump_table << '\n';
      ++warnings;
    } else {
      csv::write_keyed_table(dump, table.keyed_rows());
    }
  }
  return warnings ? kStreamWarning : kOk;
}

int cmd_validate(const RunConfig& config, std::istream* in, std::ostream& out, std::ostream& err) {
  ModelSpec spec;
  try {
    spec = model_spec(config);
  } catch (const DomainError& e) {
    report_domain_error(err, e);
    return kDomainError;
  }

  std::map<std::string, std::vector<double>> fixture;
  if (in) {
    csv::Table table;
    try {
      table = csv::read_table(*in, false);
    } catch (const ParseError& e) {
      err << "error: " << e.what() << '\n';
      return kParseError;
    }
    try {
      for (const auto& row : table.rows) {
        make_key(spec, row.strength, 0.5);
        strength_to_alpha(spec, row.strength);
        fixture[row.group_id].push_back(row.strength);
      }
    } catch (const DomainError& e) {
      report_domain_error(err, e);
      return kDomainError;
    }
  }

  if (config.quick) {
    out << "warning: reduced-power run (--quick); sample sizes are cut tenfold\n";
    err << "warning: reduced-power run (--quick)\n";
  }
  validation::BatteryOptions opts{config.seed, config.quick, config.threads};
  auto results = validation::run_battery(opts);

  const std::uint64_t draws = config.replicates > 1 ? config.replicates : (config.quick ? 6000 : 60000);
  for (const auto& [group, strengths] : fixture) {
    if (strengths.size() < 2) continue;
    validation::CriterionResult r;
    r.name = fmt::format("fixture:{}:{}", to_string(spec.family), group);
    try {
      const auto g = run_choice_experiment(spec, strengths, draws, config.seed);
      r.passed = !g.rejects(validation::kSignificance);
      r.p_value = g.p_value;
      r.detail = to_line(g);
    } catch (const PreconditionError& e) {
      r.passed = false;
      r.p_value = 0.0;
      r.detail = e.what();
    }
    results.push_back(std::move(r));
  }

  std::vector<std::string> failed;
  for (const auto& r : results) {
    out << fmt::format("CRITERION {} {} p={:.6g}\n", r.name, r.passed ? "PASS" : "FAIL", r.p_value);
    if (!r.detail.empty()) out << "  " << r.detail << '\n';
    if (!r.passed) failed.push_back(r.name);
  }
  if (failed.empty()) {
    out << fmt::format("all {} criteria passed\n", results.size());
    return kOk;
  }
  out << fmt::format("{} of {} criteria failed:\n", failed.size(), results.size());
  for (const auto& name : failed) out << "  " << name << '\n';
  return kValidationFailure;
}

int cmd_bench(const RunConfig& config, std::ostream& out, std::ostream& err) {
  ModelSpec spec;
  try {
    spec = model_spec(config);
  } catch (const DomainError& e) {
    report_domain_error(err, e);
    return kDomainError;
  }
  SplitMix64 rng(config.seed ^ 0xB0B0B0B0ULL);

  // n = 1: every method must return the only label.
  {
    const std::vector<Row> one{{"g", "only", alpha_to_strength(spec, 1.0)}};
    const auto race = sample(one, spec, SeedContext{config.seed, 0});
    const std::vector<std::string> labels{"only"};
    const std::vector<double> weights{1.0};
    const auto t = build_weight_table(labels, weights);
    const bool agree = race.at("g").label == "only" && sample_alias(t, rng.unit(), rng.unit()) == "only" &&
                       sample_inverse(t, rng.unit(), SearchStrategy::Linear) == "only" &&
                       sample_inverse(t, rng.unit(), SearchStrategy::Bisection) == "only";
    out << fmt::format("degenerate n=1: methods {}\n", agree ? "agree" : "DISAGREE");
  }

  const std::uint64_t n_rows = config.bench_rows;
  const std::uint64_t n_groups = std::max<std::uint64_t>(1, std::min(config.bench_groups, n_rows));
  std::vector<Row> rows;
  rows.reserve(n_rows);
  std::vector<std::vector<double>> group_alpha(n_groups);
  for (std::uint64_t i = 0; i < n_rows; ++i) {
    const std::uint64_t g = i % n_groups;
    const double alpha = std::exp(4.0 * rng.unit() - 2.0);
    group_alpha[g].push_back(alpha);
    rows.push_back(Row{fmt::format("g{}", g), fmt::format("q{}", i / n_groups), alpha_to_strength(spec, alpha)});
  }

  out << fmt::format("{:<34} {:>12} {:>16}\n", "method", "seconds", "rows/s");
  const auto line = [&](std::string_view name, double secs) {
    out << fmt::format("{:<34} {:>12.4f} {:>16.4g}\n", name, secs,
                       secs > 0 ? static_cast<double>(n_rows) / secs : 0.0);
  };

  auto start = std::chrono::steady_clock::now();
  const auto winners = sample(rows, spec, SeedContext{config.seed, 0}, config.threads);
  line(fmt::format("key-race {} (threads={})", to_string(spec.family), config.threads), seconds_since(start));

  std::uint64_t checksum = 0;
  const auto table_bench = [&](std::string_view name, auto draw) {
    const auto t0 = std::chrono::steady_clock::now();
    for (std::uint64_t g = 0; g < n_groups; ++g) {
      const auto& w = group_alpha[g];
      std::vector<std::string> labels(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) labels[i] = fmt::format("q{}", i);
      const auto t = build_weight_table(labels, w);
      checksum += draw(t);
    }
    line(name, seconds_since(t0));
  };
  table_bench("alias build+sample", [&](const WeightTable& t) {
    const double u1 = rng.unit();
    return sample_alias_index(t, u1, rng.unit());
  });
  table_bench("inverse-cdf linear build+sample", [&](const WeightTable& t) {
    return sample_inverse_index(t, rng.unit(), SearchStrategy::Linear);
  });
  table_bench("inverse-cdf bisection build+sample", [&](const WeightTable& t) {
    return sample_inverse_index(t, rng.unit(), SearchStrategy::Bisection);
  });
  out << fmt::format("groups sampled: {} (checksum {})\n", winners.size(), checksum);

  // Dynamic maintenance: load every row, then stream random updates.
  DynamicTable table(spec, SeedContext{config.seed, 1});
  start = std::chrono::steady_clock::now();
  for (const auto& r : rows) table.upsert(r.group_id, r.label, r.strength);
  out << fmt::format("dynamic load of {} rows: {:.4f} s\n", n_rows, seconds_since(start));

  struct Tally {
    std::uint64_t count = 0;
    std::uint64_t comparisons = 0;
  };
  std::map<std::string_view, Tally> tally;
  const std::uint64_t per_group = (n_rows + n_groups - 1) / n_groups;
  start = std::chrono::steady_clock::now();
  for (std::uint64_t i = 0; i < config.bench_updates; ++i) {
    const auto g = rng.below(n_groups);
    const auto gid = fmt::format("g{}", g);
    const auto label = fmt::format("q{}", rng.below(per_group));
    ChangeReport report;
    if (rng.unit() < 0.2) {
      try {
        report = table.remove(gid, label);
      } catch (const NotFoundError&) {
        report = table.upsert(gid, label, alpha_to_strength(spec, std::exp(4.0 * rng.unit() - 2.0)));
      }
    } else {
      report = table.upsert(gid, label, alpha_to_strength(spec, std::exp(4.0 * rng.unit() - 2.0)));
    }
    auto& t = tally[to_string(report.kind)];
    ++t.count;
    t.comparisons += report.comparisons;
  }
  const double update_secs = seconds_since(start);
  out << fmt::format("dynamic updates: {} in {:.4f} s ({:.4g} updates/s)\n", config.bench_updates,
                     update_secs, update_secs > 0 ? config.bench_updates / update_secs : 0.0);
  out << fmt::format("{:<18} {:>10} {:>14} {:>12}\n", "case", "count", "comparisons", "cmp/update");
  for (const auto& [name, t] : tally) {
    out << fmt::format("{:<18} {:>10} {:>14} {:>12.3f}\n", name, t.count, t.comparisons,
                       t.count ? static_cast<double>(t.comparisons) / t.count : 0.0);
  }
  return kOk;
}

}  // namespace keyrace::cli
