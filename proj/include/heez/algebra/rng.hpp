// Copyright 2026 The HEEZ Authors.
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
#include <span>
#include <string_view>

#include "heez/algebra/group.hpp"

namespace heez::algebra {

/// Deterministic byte generator: SHA-256 in counter mode over a 256-bit key.
/// Seeded instances reproduce their output across runs; `from_system()`
/// draws the key from the OS entropy source.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  static Rng from_system();

  void fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();
  /// Uniform in [0, bound) by rejection; bound must be non-zero.
  std::uint64_t uniform(std::uint64_t bound);
  /// Uniform in [1, q) by rejection sampling.
  Scalar random_scalar();
  /// Independent child stream keyed by the parent state and a label.
  Rng fork(std::string_view label);

 private:
  Rng() = default;
  void refill();

  std::array<std::uint8_t, 32> key_{};
  std::uint64_t counter_ = 0;
  std::array<std::uint8_t, 32> block_{};
  std::size_t used_ = 32;
};

}  // namespace heez::algebra
