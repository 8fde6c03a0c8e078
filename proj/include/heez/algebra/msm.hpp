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

#include <array>
#include <span>
#include <vector>

#include "heez/algebra/group.hpp"

namespace heez::algebra {

/// Sum of scalars[i] * points[i] (bucket method). Sizes must match.
G1 msm(std::span<const G1> points, std::span<const Scalar> scalars);

/// Reference implementation: one scalar multiplication per term.
G1 msm_naive(std::span<const G1> points, std::span<const Scalar> scalars);

/// Precomputed byte-window multiples of a fixed base for repeated
/// multiplication by arbitrary scalars.
class G1FixedBase {
 public:
  explicit G1FixedBase(const G1& base);
  G1 mul(const Scalar& k) const;
  const G1& base() const { return base_; }

 private:
  G1 base_;
  // rows_[i][j] = j * 256^i * base
  std::vector<std::array<G1Point, 256>> rows_;
};

}  // namespace heez::algebra
