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

#include "keyrace/families.hpp"
#include "keyrace/sampler.hpp"

namespace keyrace {

/// Sequential SplitMix64 stream, for harness code that needs plain i.i.d.
/// uniforms (experiments, benchmarks, fixtures). The samplers themselves use
/// derive_uniform.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  /// Uniform on the open interval (0,1).
  constexpr double unit() noexcept { return open_unit_from_bits(next()); }

  /// Uniform integer in [0, bound); bound > 0.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>(unit() * static_cast<double>(bound)) % bound;
  }

  // UniformRandomBitGenerator
  using result_type = std::uint64_t;
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }
  constexpr result_type operator()() noexcept { return next(); }

 private:
  std::uint64_t state_;
};

}  // namespace keyrace
