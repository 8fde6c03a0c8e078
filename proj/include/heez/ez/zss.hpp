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

#include <optional>

namespace heez::ez {

// Group-generic ZSS signing and verification, shared by the BN254 code and
// the small mock group used for exhaustive testing.
//   sign:   sigma = (hC + sk)^-1 * pk_u
//   verify: e(sigma, hC * g + pk_cp) == e(pk_u, g)

template <class Scalar, class Point>
std::optional<Point> zss_sign(const Scalar& hC, const Scalar& sk, const Point& pk_u) {
  Scalar denom = hC + sk;
  if (denom.is_zero()) return std::nullopt;
  return denom.inverse() * pk_u;
}

template <class Scalar, class G1, class G2, class Pairing>
bool zss_verify(const Scalar& hC, const G1& sigma, const G2& pk_cp, const G1& pk_u, const G2& g,
                Pairing&& e) {
  return e(sigma, hC * g + pk_cp) == e(pk_u, g);
}

}  // namespace heez::ez
