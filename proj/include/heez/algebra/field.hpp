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

#include "heez/algebra/uint256.hpp"

namespace heez::algebra {

namespace detail {

constexpr std::uint64_t mont_inv64(std::uint64_t m0) {
  // Newton iteration for m0^-1 mod 2^64, then negate.
  std::uint64_t inv = 1;
  for (int i = 0; i < 7; ++i) inv *= 2 - m0 * inv;
  return ~inv + 1;
}

constexpr U256 mod_double(const U256& a, const U256& m) {
  U256 out;
  std::uint64_t carry = add_with_carry(out, a, a);
  if (carry != 0 || out >= m) sub_with_borrow(out, out, m);
  return out;
}

constexpr U256 r2_mod(const U256& m) {
  U256 r = U256::from_u64(1);
  for (int i = 0; i < 512; ++i) r = mod_double(r, m);
  return r;
}

}  // namespace detail

/// Prime field element in Montgomery representation. `Params` supplies the
/// modulus as `static constexpr U256 kModulus` (must be below 2^255).
template <typename Params>
class MontField {
 public:
  static constexpr U256 kModulus = Params::kModulus;
  static constexpr std::uint64_t kInv = detail::mont_inv64(kModulus.limb[0]);
  static constexpr U256 kR2 = detail::r2_mod(kModulus);

  constexpr MontField() = default;

  static MontField zero() { return MontField(); }
  static MontField one() { return from_u256(U256::from_u64(1)); }
  static MontField from_u64(std::uint64_t v) { return from_u256(U256::from_u64(v)); }

  /// Any 256-bit integer, reduced modulo the field prime.
  static MontField from_u256(U256 v) {
    while (v >= kModulus) sub_with_borrow(v, v, kModulus);
    MontField out;
    out.v_ = mont_mul(v, kR2);
    return out;
  }

  /// 512-bit big-endian input reduced modulo the prime (used for hashing).
  static MontField from_wide_bytes_be(std::span<const std::uint8_t, 64> in) {
    MontField hi = from_u256(U256::from_bytes_be(in.template subspan<0, 32>()));
    MontField lo = from_u256(U256::from_bytes_be(in.template subspan<32, 32>()));
    // hi * 2^256 == hi * R: multiply the Montgomery form by R2 once more.
    MontField shifted;
    shifted.v_ = mont_mul(hi.v_, kR2);
    return shifted + lo;
  }

  U256 to_u256() const { return mont_mul(v_, U256::from_u64(1)); }

  bool is_zero() const { return v_.is_zero(); }
  bool is_one() const { return *this == one(); }
  bool is_odd() const { return to_u256().limb[0] & 1U; }

  friend bool operator==(const MontField& a, const MontField& b) { return a.v_ == b.v_; }

  friend MontField operator+(const MontField& a, const MontField& b) {
    MontField out;
    std::uint64_t carry = add_with_carry(out.v_, a.v_, b.v_);
    if (carry != 0 || out.v_ >= kModulus) sub_with_borrow(out.v_, out.v_, kModulus);
    return out;
  }
  friend MontField operator-(const MontField& a, const MontField& b) {
    MontField out;
    if (sub_with_borrow(out.v_, a.v_, b.v_) != 0) add_with_carry(out.v_, out.v_, kModulus);
    return out;
  }
  MontField operator-() const { return zero() - *this; }
  friend MontField operator*(const MontField& a, const MontField& b) {
    MontField out;
    out.v_ = mont_mul(a.v_, b.v_);
    return out;
  }
  MontField& operator+=(const MontField& o) { return *this = *this + o; }
  MontField& operator-=(const MontField& o) { return *this = *this - o; }
  MontField& operator*=(const MontField& o) { return *this = *this * o; }

  MontField square() const { return *this * *this; }
  MontField dbl() const { return *this + *this; }

  MontField pow(const U256& e) const {
    MontField acc = one();
    for (std::size_t i = e.bit_length(); i-- > 0;) {
      acc = acc.square();
      if (e.bit(i)) acc *= *this;
    }
    return acc;
  }

  /// Multiplicative inverse; inverse of zero is zero.
  MontField inverse() const {
    U256 e;
    sub_with_borrow(e, kModulus, U256::from_u64(2));
    return pow(e);
  }

  /// Euler criterion: 1 for non-zero squares, -1 for non-squares, 0 for zero.
  int legendre() const {
    if (is_zero()) return 0;
    U256 e;
    sub_with_borrow(e, kModulus, U256::from_u64(1));
    e = shr1(e);
    return pow(e).is_one() ? 1 : -1;
  }

  /// Square root for p = 3 (mod 4). Returns false when none exists.
  bool sqrt(MontField& out) const {
    static_assert((kModulus.limb[0] & 3U) == 3U, "sqrt requires p = 3 mod 4");
    U256 e;
    add_with_carry(e, kModulus, U256::from_u64(1));
    e = shr1(shr1(e));
    MontField c = pow(e);
    if (c.square() != *this) return false;
    out = c;
    return true;
  }

  void to_bytes(std::span<std::uint8_t, 32> out) const { to_u256().to_bytes_be(out); }

  /// Canonical decode; rejects values >= modulus.
  static bool from_bytes(std::span<const std::uint8_t, 32> in, MontField& out) {
    U256 v = U256::from_bytes_be(in);
    if (v >= kModulus) return false;
    out = from_u256(v);
    return true;
  }

  const U256& montgomery_limbs() const { return v_; }

 private:
  static U256 mont_mul(const U256& a, const U256& b) {
    std::uint64_t t[6] = {0, 0, 0, 0, 0, 0};
    for (std::size_t i = 0; i < 4; ++i) {
      u128 carry = 0;
      for (std::size_t j = 0; j < 4; ++j) {
        u128 s = static_cast<u128>(a.limb[j]) * b.limb[i] + t[j] + carry;
        t[j] = static_cast<std::uint64_t>(s);
        carry = s >> 64;
      }
      u128 s = static_cast<u128>(t[4]) + carry;
      t[4] = static_cast<std::uint64_t>(s);
      t[5] = static_cast<std::uint64_t>(s >> 64);

      std::uint64_t m = t[0] * kInv;
      s = static_cast<u128>(m) * kModulus.limb[0] + t[0];
      carry = s >> 64;
      for (std::size_t j = 1; j < 4; ++j) {
        s = static_cast<u128>(m) * kModulus.limb[j] + t[j] + carry;
        t[j - 1] = static_cast<std::uint64_t>(s);
        carry = s >> 64;
      }
      s = static_cast<u128>(t[4]) + carry;
      t[3] = static_cast<std::uint64_t>(s);
      t[4] = t[5] + static_cast<std::uint64_t>(s >> 64);
    }
    U256 out{{t[0], t[1], t[2], t[3]}};
    if (t[4] != 0 || out >= kModulus) sub_with_borrow(out, out, kModulus);
    return out;
  }

  U256 v_{};
};

struct FpParams {
  static constexpr U256 kModulus =
      U256::from_hex("30644e72e131a029b85045b68181585d97816a916871ca8d3c208c16d87cfd47");
};

struct FrParams {
  static constexpr U256 kModulus =
      U256::from_hex("30644e72e131a029b85045b68181585d2833e84879b9709143e1f593f0000001");
};

/// Base field of the BN254 curve.
using Fp = MontField<FpParams>;
/// Scalar field Z_q of the pairing groups (q is the prime group order).
using Fr = MontField<FrParams>;

}  // namespace heez::algebra
