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

#include "heez/algebra/field.hpp"

namespace heez::algebra {

/// Fp2 = Fp[i] / (i^2 + 1).
struct Fp2 {
  Fp c0, c1;

  static Fp2 zero() { return {}; }
  static Fp2 one() { return {Fp::one(), Fp::zero()}; }
  /// Non-residue xi = 9 + i defining the sextic extension.
  static Fp2 xi() { return {Fp::from_u64(9), Fp::one()}; }

  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
  friend bool operator==(const Fp2&, const Fp2&) = default;

  friend Fp2 operator+(const Fp2& a, const Fp2& b) { return {a.c0 + b.c0, a.c1 + b.c1}; }
  friend Fp2 operator-(const Fp2& a, const Fp2& b) { return {a.c0 - b.c0, a.c1 - b.c1}; }
  Fp2 operator-() const { return {-c0, -c1}; }
  friend Fp2 operator*(const Fp2& a, const Fp2& b) {
    Fp t0 = a.c0 * b.c0;
    Fp t1 = a.c1 * b.c1;
    return {t0 - t1, (a.c0 + a.c1) * (b.c0 + b.c1) - t0 - t1};
  }
  friend Fp2 operator*(const Fp2& a, const Fp& s) { return {a.c0 * s, a.c1 * s}; }
  Fp2& operator+=(const Fp2& o) { return *this = *this + o; }
  Fp2& operator-=(const Fp2& o) { return *this = *this - o; }
  Fp2& operator*=(const Fp2& o) { return *this = *this * o; }

  Fp2 square() const {
    Fp t = c0 * c1;
    return {(c0 + c1) * (c0 - c1), t + t};
  }
  Fp2 dbl() const { return {c0.dbl(), c1.dbl()}; }
  Fp2 conj() const { return {c0, -c1}; }
  Fp2 mul_by_xi() const {
    Fp nine_c0 = c0 * Fp::from_u64(9);
    Fp nine_c1 = c1 * Fp::from_u64(9);
    return {nine_c0 - c1, c0 + nine_c1};
  }
  Fp2 inverse() const {
    Fp norm_inv = (c0.square() + c1.square()).inverse();
    return {c0 * norm_inv, -(c1 * norm_inv)};
  }
  Fp2 pow(const U256& e) const {
    Fp2 acc = one();
    for (std::size_t i = e.bit_length(); i-- > 0;) {
      acc = acc.square();
      if (e.bit(i)) acc *= *this;
    }
    return acc;
  }

  /// Square root in Fp2 for p = 3 (mod 4); false when none exists.
  bool sqrt(Fp2& out) const;

  /// Sign used by point compression: parity of c0, or of c1 when c0 = 0.
  bool is_odd() const { return c0.is_zero() ? c1.is_odd() : c0.is_odd(); }
};

/// Fp6 = Fp2[v] / (v^3 - xi).
struct Fp6 {
  Fp2 c0, c1, c2;

  static Fp6 zero() { return {}; }
  static Fp6 one() { return {Fp2::one(), Fp2::zero(), Fp2::zero()}; }

  bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }
  friend bool operator==(const Fp6&, const Fp6&) = default;

  friend Fp6 operator+(const Fp6& a, const Fp6& b) {
    return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2};
  }
  friend Fp6 operator-(const Fp6& a, const Fp6& b) {
    return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2};
  }
  Fp6 operator-() const { return {-c0, -c1, -c2}; }
  friend Fp6 operator*(const Fp6& a, const Fp6& b) {
    Fp2 t0 = a.c0 * b.c0;
    Fp2 t1 = a.c1 * b.c1;
    Fp2 t2 = a.c2 * b.c2;
    return {((a.c1 + a.c2) * (b.c1 + b.c2) - t1 - t2).mul_by_xi() + t0,
            (a.c0 + a.c1) * (b.c0 + b.c1) - t0 - t1 + t2.mul_by_xi(),
            (a.c0 + a.c2) * (b.c0 + b.c2) - t0 - t2 + t1};
  }
  Fp6 square() const { return *this * *this; }
  /// Multiplication by v.
  Fp6 mul_by_v() const { return {c2.mul_by_xi(), c0, c1}; }
  Fp6 inverse() const {
    Fp2 a = c0.square() - (c1 * c2).mul_by_xi();
    Fp2 b = c2.square().mul_by_xi() - c0 * c1;
    Fp2 c = c1.square() - c0 * c2;
    Fp2 f = c0 * a + (c2 * b + c1 * c).mul_by_xi();
    Fp2 f_inv = f.inverse();
    return {a * f_inv, b * f_inv, c * f_inv};
  }
};

/// Fp12 = Fp6[w] / (w^2 - v); equivalently Fp2[w] / (w^6 - xi).
struct Fp12 {
  Fp6 c0, c1;

  static Fp12 zero() { return {}; }
  static Fp12 one() { return {Fp6::one(), Fp6::zero()}; }

  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
  bool is_one() const { return *this == one(); }
  friend bool operator==(const Fp12&, const Fp12&) = default;

  friend Fp12 operator*(const Fp12& a, const Fp12& b) {
    Fp6 t0 = a.c0 * b.c0;
    Fp6 t1 = a.c1 * b.c1;
    return {t0 + t1.mul_by_v(), (a.c0 + a.c1) * (b.c0 + b.c1) - t0 - t1};
  }
  Fp12& operator*=(const Fp12& o) { return *this = *this * o; }

  Fp12 square() const {
    Fp6 t = c0 * c1;
    Fp6 s = (c0 + c1) * (c0 + c1.mul_by_v());
    return {s - t - t.mul_by_v(), t + t};
  }
  Fp12 conj() const { return {c0, -c1}; }
  Fp12 inverse() const {
    Fp6 denom = (c0.square() - c1.square().mul_by_v()).inverse();
    return {c0 * denom, -(c1 * denom)};
  }

  /// Coefficient of w^k (k in [0, 6)) over Fp2.
  Fp2& coeff(std::size_t k);
  const Fp2& coeff(std::size_t k) const;

  /// x -> x^p.
  Fp12 frobenius() const;

  /// Exponentiation by a big-endian-limb exponent (most significant limb first).
  Fp12 pow_limbs(std::span<const std::uint64_t> exponent_be) const;
  Fp12 pow(const U256& e) const;
};

/// Precomputed xi^(k(p-1)/6) for k in [0, 6).
const std::array<Fp2, 6>& frobenius_coefficients();

}  // namespace heez::algebra
