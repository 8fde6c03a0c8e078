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

#include "heez/algebra/tower.hpp"

namespace heez::algebra {

bool Fp2::sqrt(Fp2& out) const {
  if (is_zero()) {
    out = zero();
    return true;
  }
  // Adj and Rodriguez-Henriquez, algorithm 9 (q = 3 mod 4).
  const U256& p = Fp::kModulus;
  U256 e34;  // (p - 3) / 4
  sub_with_borrow(e34, p, U256::from_u64(3));
  e34 = shr1(shr1(e34));
  U256 e12;  // (p - 1) / 2
  sub_with_borrow(e12, p, U256::from_u64(1));
  e12 = shr1(e12);

  Fp2 a1 = pow(e34);
  Fp2 alpha = a1.square() * *this;
  Fp2 a0 = alpha.conj() * alpha;
  Fp2 minus_one = -one();
  if (a0 == minus_one) return false;
  Fp2 x0 = a1 * *this;
  Fp2 root;
  if (alpha == minus_one) {
    root = Fp2{-x0.c1, x0.c0};  // i * x0
  } else {
    root = (one() + alpha).pow(e12) * x0;
  }
  if (root.square() != *this) return false;
  out = root;
  return true;
}

Fp2& Fp12::coeff(std::size_t k) {
  Fp6& half = (k % 2 == 0) ? c0 : c1;
  switch (k / 2) {
    case 0: return half.c0;
    case 1: return half.c1;
    default: return half.c2;
  }
}

const Fp2& Fp12::coeff(std::size_t k) const {
  return const_cast<Fp12*>(this)->coeff(k);
}

const std::array<Fp2, 6>& frobenius_coefficients() {
  static const std::array<Fp2, 6> table = [] {
    U256 e;  // (p - 1) / 6
    sub_with_borrow(e, Fp::kModulus, U256::from_u64(1));
    U256 q;
    // Divide by 6 with schoolbook long division on 64-bit limbs.
    u128 rem = 0;
    for (int i = 3; i >= 0; --i) {
      u128 cur = (rem << 64) | e.limb[i];
      q.limb[i] = static_cast<std::uint64_t>(cur / 6);
      rem = cur % 6;
    }
    std::array<Fp2, 6> t;
    Fp2 gamma = Fp2::xi().pow(q);
    t[0] = Fp2::one();
    for (std::size_t k = 1; k < 6; ++k) t[k] = t[k - 1] * gamma;
    return t;
  }();
  return table;
}

Fp12 Fp12::frobenius() const {
  const auto& gamma = frobenius_coefficients();
  Fp12 out;
  for (std::size_t k = 0; k < 6; ++k) out.coeff(k) = coeff(k).conj() * gamma[k];
  return out;
}

Fp12 Fp12::pow_limbs(std::span<const std::uint64_t> exponent_be) const {
  Fp12 acc = one();
  bool started = false;
  for (std::uint64_t limb : exponent_be) {
    for (int b = 63; b >= 0; --b) {
      if (started) acc = acc.square();
      if ((limb >> b) & 1U) {
        acc = started ? acc * *this : *this;
        started = true;
      }
    }
  }
  return acc;
}

Fp12 Fp12::pow(const U256& e) const {
  std::array<std::uint64_t, 4> be{e.limb[3], e.limb[2], e.limb[1], e.limb[0]};
  return pow_limbs(be);
}

}  // namespace heez::algebra
