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
#include <string_view>

namespace keyrace {

/// Key-generating families. All but ExpMin are max-compatible: the row with
/// the largest key wins with probability proportional to its weight. ExpMin is
/// the exponential race, won by the smallest key.
enum class Family { Canonical, Gumbel1, Frechet2, NegExp, ExpMin };

enum class Orientation { Max, Min };

std::string_view to_string(Family family) noexcept;
std::string_view to_string(Orientation orientation) noexcept;

/// Accepts the lower-case names printed by to_string ("canonical", "gumbel1",
/// "frechet2", "negexp", "expmin"). Throws DomainError on anything else.
Family parse_family(std::string_view name);

/// Family plus the scale/offset pair used by the recorded-strength
/// conventions:
///   Gumbel1   s = c log(alpha) + d
///   Frechet2  s = d alpha^c
///   NegExp    s = d alpha^(-c)
/// Canonical and ExpMin take the strength as the weight itself.
struct ModelSpec {
  Family family = Family::Canonical;
  double scale_c = 1.0;
  double offset_d = 0.0;

  Orientation orientation() const noexcept {
    return family == Family::ExpMin ? Orientation::Min : Orientation::Max;
  }

  /// Throws DomainError if scale_c is not a positive finite number (for the
  /// families that use it) or offset_d is not finite.
  void validate() const;
};

/// Family with c = 1 and the conventional offset: d = 0 for Gumbel1, d = 1
/// for Frechet2 (positive strengths), d = -1 for NegExp (negative strengths).
ModelSpec default_spec(Family family) noexcept;

/// A competition key. `value` is the family formula; `order` is the coordinate
/// every comparison uses. They coincide except for Canonical, where `order` is
/// log(u)/alpha so that large weights do not collapse keys onto 1.0. The log is
/// strictly increasing, so winners are the same either way.
struct Key {
  double value = 0.0;
  double order = 0.0;

  static constexpr Key plain(double v) noexcept { return Key{v, v}; }
};

/// Strict "a beats b" under the orientation, ignoring tie-breaking.
constexpr bool beats(Orientation orientation, const Key& a, const Key& b) noexcept {
  return orientation == Orientation::Max ? a.order > b.order : a.order < b.order;
}

/// Maps a 64-bit word onto the open interval (0,1): ((x >> 12) + 0.5) * 2^-52.
/// Every step is exact, so the result lies in [2^-53, 1 - 2^-53]. (With 53
/// bits, x + 0.5 would round and the top word would land on 1.0.)
constexpr double open_unit_from_bits(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

Key key_canonical(double alpha, double u);
Key key_gumbel1(double strength, double c, double u);
Key key_frechet2(double strength, double c, double u);
Key key_negexp(double strength, double c, double u);
Key key_expmin(double alpha, double u);

/// Dispatches on spec.family, feeding `strength` to the matching formula.
Key make_key(const ModelSpec& spec, double strength, double u);

/// Recovers the weight alpha from a recorded strength.
double strength_to_alpha(const ModelSpec& spec, double strength);

/// Inverse of strength_to_alpha; used to build fixtures from weight vectors.
double alpha_to_strength(const ModelSpec& spec, double alpha);

}  // namespace keyrace
