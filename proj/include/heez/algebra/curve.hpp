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
#include <cstdint>
#include <span>

#include "heez/algebra/field.hpp"
#include "heez/algebra/tower.hpp"

namespace heez::algebra {

struct G1Curve {
  using Field = Fp;
  static Fp b() { return Fp::from_u64(3); }
};

struct G2Curve {
  using Field = Fp2;
  /// Twist coefficient 3 / xi.
  static Fp2 b() {
    static const Fp2 kB = Fp2{Fp::from_u64(3), Fp::zero()} * Fp2::xi().inverse();
    return kB;
  }
};

/// Short Weierstrass point y^2 = x^3 + b in Jacobian coordinates.
template <typename Curve>
class JacobianPoint {
 public:
  using F = typename Curve::Field;

  JacobianPoint() : x_(F::one()), y_(F::one()), z_(F::zero()) {}

  static JacobianPoint identity() { return JacobianPoint(); }
  static JacobianPoint from_affine(const F& x, const F& y) {
    JacobianPoint p;
    p.x_ = x;
    p.y_ = y;
    p.z_ = F::one();
    return p;
  }

  bool is_identity() const { return z_.is_zero(); }

  bool is_on_curve() const {
    if (is_identity()) return true;
    // Y^2 = X^3 + b Z^6
    F z2 = z_.square();
    F z6 = z2.square() * z2;
    return y_.square() == x_.square() * x_ + Curve::b() * z6;
  }

  /// Affine coordinates; undefined for the identity.
  void to_affine(F& x, F& y) const {
    F zinv = z_.inverse();
    F zinv2 = zinv.square();
    x = x_ * zinv2;
    y = y_ * zinv2 * zinv;
  }

  JacobianPoint dbl() const {
    if (is_identity()) return *this;
    // dbl-2009-l
    F a = x_.square();
    F b = y_.square();
    F c = b.square();
    F d = ((x_ + b).square() - a - c).dbl();
    F e = a.dbl() + a;
    F f = e.square();
    JacobianPoint out;
    out.x_ = f - d.dbl();
    F c8 = c.dbl().dbl().dbl();
    out.y_ = e * (d - out.x_) - c8;
    out.z_ = (y_ * z_).dbl();
    return out;
  }

  friend JacobianPoint operator+(const JacobianPoint& p, const JacobianPoint& q) {
    if (p.is_identity()) return q;
    if (q.is_identity()) return p;
    // add-2007-bl
    F z1z1 = p.z_.square();
    F z2z2 = q.z_.square();
    F u1 = p.x_ * z2z2;
    F u2 = q.x_ * z1z1;
    F s1 = p.y_ * q.z_ * z2z2;
    F s2 = q.y_ * p.z_ * z1z1;
    if (u1 == u2) {
      if (s1 == s2) return p.dbl();
      return identity();
    }
    F h = u2 - u1;
    F i = h.dbl().square();
    F j = h * i;
    F r = (s2 - s1).dbl();
    F v = u1 * i;
    JacobianPoint out;
    out.x_ = r.square() - j - v.dbl();
    out.y_ = r * (v - out.x_) - (s1 * j).dbl();
    out.z_ = ((p.z_ + q.z_).square() - z1z1 - z2z2) * h;
    return out;
  }

  JacobianPoint operator-() const {
    JacobianPoint out = *this;
    out.y_ = -y_;
    return out;
  }
  friend JacobianPoint operator-(const JacobianPoint& p, const JacobianPoint& q) { return p + (-q); }
  JacobianPoint& operator+=(const JacobianPoint& o) { return *this = *this + o; }

  /// Scalar multiplication with a fixed 4-bit window.
  JacobianPoint mul(const U256& k) const {
    std::array<JacobianPoint, 16> table;
    table[0] = identity();
    for (std::size_t i = 1; i < 16; ++i) table[i] = table[i - 1] + *this;
    JacobianPoint acc;
    std::size_t nbits = k.bit_length();
    std::size_t windows = (nbits + 3) / 4;
    for (std::size_t w = windows; w-- > 0;) {
      acc = acc.dbl().dbl().dbl().dbl();
      unsigned idx = 0;
      for (int b = 3; b >= 0; --b) idx = (idx << 1) | (k.bit(w * 4 + b) ? 1U : 0U);
      if (idx != 0) acc += table[idx];
    }
    return acc;
  }
  JacobianPoint mul(const Fr& k) const { return mul(k.to_u256()); }

  friend bool operator==(const JacobianPoint& p, const JacobianPoint& q) {
    if (p.is_identity() || q.is_identity()) return p.is_identity() && q.is_identity();
    F z1z1 = p.z_.square();
    F z2z2 = q.z_.square();
    return p.x_ * z2z2 == q.x_ * z1z1 && p.y_ * q.z_ * z2z2 == q.y_ * p.z_ * z1z1;
  }

 private:
  F x_, y_, z_;
};

using G1Point = JacobianPoint<G1Curve>;
using G2Point = JacobianPoint<G2Curve>;

}  // namespace heez::algebra
