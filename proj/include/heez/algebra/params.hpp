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

#include <string>

#include "heez/algebra/group.hpp"
#include "heez/algebra/hash.hpp"

namespace heez::algebra {

/// Public parameters published by the storage provider at setup: the
/// groups, their prime order q, generators P (G1) and g (G2), and the
/// pairing and hash maps bound to them.
struct SystemParams {
  std::string curve;
  U256 order;
  G1 P;
  G2 g;

  static const SystemParams& bn254();

  GT e(const G1& a, const G2& b) const { return pairing(a, b); }
  G1 H(ByteSpan data) const { return hash_to_group(data); }
  Scalar h(const G1& point) const { return hash_to_scalar(point); }
};

}  // namespace heez::algebra
