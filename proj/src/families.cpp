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

#include "keyrace/families.hpp"

#include <cmath>

#include <fmt/format.h>

#include "keyrace/errors.hpp"

namespace keyrace {
namespace {

void require_open_unit(double u, std::string_view who) {
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError(fmt::format("{}: uniform {} is outside (0,1)", who, u));
  }
}

void require_positive(double x, std::string_view who, std::string_view what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(fmt::format("{}: {} must be positive and finite, got {}", who, what, x));
  }
}

void require_nonzero_strength(double s, std::string_view who) {
  if (s == 0.0) {
    throw DegenerateWeightError(
        fmt::format("{}: zero strength carries no mass; omit the row instead", who));
  }
  if (!std::isfinite(s)) {
    throw DomainError(fmt::format("{}: strength must be finite, got {}", who, s));
  }
}

}  // namespace

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::Canonical: return "canonical";
    case Family::Gumbel1: return "gumbel1";
    case Family::Frechet2: return "frechet2";
    case Family::NegExp: return "negexp";
    case Family::ExpMin: return "expmin";
  }
  return "?";
}

std::string_view to_string(Orientation orientation) noexcept {
  return orientation == Orientation::Max ? "max" : "min";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::Canonical, Family::Gumbel1, Family::Frechet2, Family::NegExp,
                   Family::ExpMin}) {
    if (to_string(f) == name) return f;
  }
  throw DomainError(fmt::format("unknown model family '{}'", name));
}

void ModelSpec::validate() const {
  if (family != Family::ExpMin) require_positive(scale_c, to_string(family), "scale c");
  if (!std::isfinite(offset_d)) {
    throw DomainError(fmt::format("{}: offset d must be finite", to_string(family)));
  }
}

ModelSpec default_spec(Family family) noexcept {
  ModelSpec spec{family, 1.0, 0.0};
  if (family == Family::Frechet2) spec.offset_d = 1.0;
  if (family == Family::NegExp) spec.offset_d = -1.0;
  return spec;
}

Key key_canonical(double alpha, double u) {
  require_positive(alpha, "canonical", "alpha");
  require_open_unit(u, "canonical");
  return Key{std::pow(u, 1.0 / alpha), std::log(u) / alpha};
}

Key key_gumbel1(double strength, double c, double u) {
  require_positive(c, "gumbel1", "scale c");
  require_open_unit(u, "gumbel1");
  if (!std::isfinite(strength)) {
    throw DomainError(fmt::format("gumbel1: strength must be finite, got {}", strength));
  }
  return Key::plain(strength - c * std::log(-std::log(u)));
}

Key key_frechet2(double strength, double c, double u) {
  require_nonzero_strength(strength, "frechet2");
  require_positive(c, "frechet2", "scale c");
  require_open_unit(u, "frechet2");
  return Key::plain(std::fabs(strength) * std::pow(-std::log(u), -c));
}

Key key_negexp(double strength, double c, double u) {
  require_nonzero_strength(strength, "negexp");
  require_positive(c, "negexp", "scale c");
  require_open_unit(u, "negexp");
  return Key::plain(-std::fabs(strength) * std::pow(-std::log(u), c));
}

Key key_expmin(double alpha, double u) {
  require_positive(alpha, "expmin", "alpha");
  require_open_unit(u, "expmin");
  return Key::plain(-std::log(u) / alpha);
}

Key make_key(const ModelSpec& spec, double strength, double u) {
  switch (spec.family) {
    case Family::Canonical: return key_canonical(strength, u);
    case Family::Gumbel1: return key_gumbel1(strength, spec.scale_c, u);
    case Family::Frechet2: return key_frechet2(strength, spec.scale_c, u);
    case Family::NegExp: return key_negexp(strength, spec.scale_c, u);
    case Family::ExpMin: return key_expmin(strength, u);
  }
  throw DomainError("make_key: invalid family");
}

double strength_to_alpha(const ModelSpec& spec, double strength) {
  const auto name = to_string(spec.family);
  if (!std::isfinite(strength)) {
    throw DomainError(fmt::format("{}: strength {} is not finite", name, strength));
  }
  double alpha = 0.0;
  switch (spec.family) {
    case Family::Canonical:
    case Family::ExpMin:
      alpha = strength;
      break;
    case Family::Gumbel1:
      alpha = std::exp((strength - spec.offset_d) / spec.scale_c);
      break;
    case Family::Frechet2:
    case Family::NegExp: {
      if (spec.offset_d == 0.0) {
        throw DomainError(fmt::format("{}: offset d must be nonzero", name));
      }
      const double ratio = strength / spec.offset_d;
      if (!(ratio > 0.0)) {
        throw DomainError(fmt::format("{}: strength {} must have the sign of d = {}", name,
                                      strength, spec.offset_d));
      }
      const double power = spec.family == Family::Frechet2 ? 1.0 / spec.scale_c
                                                           : -1.0 / spec.scale_c;
      alpha = std::pow(ratio, power);
      break;
    }
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError(
        fmt::format("{}: strength {} does not map to a positive finite weight", name, strength));
  }
  return alpha;
}

double alpha_to_strength(const ModelSpec& spec, double alpha) {
  require_positive(alpha, to_string(spec.family), "alpha");
  if ((spec.family == Family::Frechet2 || spec.family == Family::NegExp) && spec.offset_d == 0.0) {
    throw DomainError(fmt::format("{}: offset d must be nonzero", to_string(spec.family)));
  }
  switch (spec.family) {
    case Family::Canonical:
    case Family::ExpMin: return alpha;
    case Family::Gumbel1: return spec.scale_c * std::log(alpha) + spec.offset_d;
    case Family::Frechet2: return spec.offset_d * std::pow(alpha, spec.scale_c);
    case Family::NegExp: return spec.offset_d * std::pow(alpha, -spec.scale_c);
  }
  throw DomainError("alpha_to_strength: invalid family");
}

}  // namespace keyrace
