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
#include <cstddef>
#include <cstdint>
#include <span>

#include "heez/algebra/curve.hpp"
#include "heez/algebra/field.hpp"
#include "heez/bytes.hpp"

namespace heez::algebra {

/// Element of Z_q. Zero is representable (attribute values may be zero);
/// operations that require Z_q^* check explicitly.
class Scalar {
 public:
  static constexpr std::size_t kEncodedSize = 32;

  Scalar() = default;
  explicit Scalar(const Fr& v) : v_(v) {}

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(Fr::one()); }
  static Scalar from_u64(std::uint64_t v) { return Scalar(Fr::from_u64(v)); }
  /// Reduces modulo q.
  static Scalar from_u256(const U256& v) { return Scalar(Fr::from_u256(v)); }
  /// Canonical 32-byte big-endian decode; rejects values >= q.
  static Scalar from_bytes(ByteSpan in);
  /// Decodes a big-endian integer of at most 32 bytes and reduces modulo q.
  static Scalar from_bytes_reduce(ByteSpan in);

  std::array<std::uint8_t, kEncodedSize> to_bytes() const;
  U256 to_u256() const { return v_.to_u256(); }
  const Fr& field() const { return v_; }

  bool is_zero() const { return v_.is_zero(); }
  Scalar inverse() const { return Scalar(v_.inverse()); }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }
  friend Scalar operator+(const Scalar& a, const Scalar& b) { return Scalar(a.v_ + b.v_); }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return Scalar(a.v_ - b.v_); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) { return Scalar(a.v_ * b.v_); }
  Scalar operator-() const { return Scalar(-v_); }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

 private:
  Fr v_;
};

/// Element of G1 (the full BN254 curve group over Fp, cofactor 1).
class G1 {
 public:
  /// Flag byte followed by the 32-byte x coordinate.
  static constexpr std::size_t kEncodedSize = 33;

  G1() = default;
  explicit G1(const G1Point& p) : p_(p) {}

  static G1 identity() { return G1(); }
  static const G1& generator();
  /// Validating decode: canonical x, on-curve, correct flag.
  static G1 from_bytes(ByteSpan in);

  std::array<std::uint8_t, kEncodedSize> to_bytes() const;
  const G1Point& point() const { return p_; }

  bool is_identity() const { return p_.is_identity(); }
  bool is_valid() const { return p_.is_on_curve(); }

  friend bool operator==(const G1& a, const G1& b) { return a.p_ == b.p_; }
  friend G1 operator+(const G1& a, const G1& b) { return G1(a.p_ + b.p_); }
  friend G1 operator-(const G1& a, const G1& b) { return G1(a.p_ - b.p_); }
  G1 operator-() const { return G1(-p_); }
  friend G1 operator*(const Scalar& k, const G1& a) { return G1(a.p_.mul(k.to_u256())); }
  friend G1 operator*(const G1& a, const Scalar& k) { return k * a; }
  G1& operator+=(const G1& o) { return *this = *this + o; }

 private:
  G1Point p_;
};

/// Element of the order-q subgroup of the sextic twist over Fp2.
class G2 {
 public:
  /// Flag byte followed by x.c0 and x.c1 (32 bytes each).
  static constexpr std::size_t kEncodedSize = 65;

  G2() = default;
  explicit G2(const G2Point& p) : p_(p) {}

  static G2 identity() { return G2(); }
  static const G2& generator();
  /// Validating decode including the subgroup check.
  static G2 from_bytes(ByteSpan in);
  /// Builds a point from raw affine coordinates without any check (tests only).
  static G2 from_affine_unchecked(const Fp2& x, const Fp2& y) {
    return G2(G2Point::from_affine(x, y));
  }

  std::array<std::uint8_t, kEncodedSize> to_bytes() const;
  const G2Point& point() const { return p_; }

  bool is_identity() const { return p_.is_identity(); }
  bool is_on_curve() const { return p_.is_on_curve(); }
  /// On the twist and killed by q.
  bool is_valid() const;

  friend bool operator==(const G2& a, const G2& b) { return a.p_ == b.p_; }
  friend G2 operator+(const G2& a, const G2& b) { return G2(a.p_ + b.p_); }
  friend G2 operator-(const G2& a, const G2& b) { return G2(a.p_ - b.p_); }
  G2 operator-() const { return G2(-p_); }
  friend G2 operator*(const Scalar& k, const G2& a) { return G2(a.p_.mul(k.to_u256())); }
  friend G2 operator*(const G2& a, const Scalar& k) { return k * a; }
  G2& operator+=(const G2& o) { return *this = *this + o; }

 private:
  G2Point p_;
};

/// Element of the order-q subgroup of Fp12^*, written multiplicatively.
class GT {
 public:
  GT() : v_(Fp12::one()) {}
  explicit GT(const Fp12& v) : v_(v) {}

  static GT identity() { return GT(); }

  const Fp12& value() const { return v_; }
  bool is_identity() const { return v_.is_one(); }
  GT pow(const Scalar& k) const { return GT(v_.pow(k.to_u256())); }
  GT inverse() const { return GT(v_.conj()); }  // unitary: inverse is conjugate

  friend bool operator==(const GT& a, const GT& b) { return a.v_ == b.v_; }
  friend GT operator*(const GT& a, const GT& b) { return GT(a.v_ * b.v_); }

 private:
  Fp12 v_;
};

/// Optimal ate pairing e: G1 x G2 -> GT. Throws Error(invalid_element)
/// when either input is off its curve.
GT pairing(const G1& a, const G2& b);

/// Product of pairings sharing one final exponentiation.
GT multi_pairing(std::span<const G1> a, std::span<const G2> b);

/// Number of pairings evaluated by this process (Miller loops).
std::uint64_t pairing_count() noexcept;
/// Pairings evaluated by the calling thread.
std::uint64_t thread_pairing_count() noexcept;

}  // namespace heez::algebra
