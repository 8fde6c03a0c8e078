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

#include <array>
#include <atomic>

#include "heez/algebra/group.hpp"
#include "heez/error.hpp"

namespace heez::algebra {

namespace {

std::atomic<std::uint64_t> g_pairings{0};
thread_local std::uint64_t t_pairings = 0;

// 6x + 2 for the BN parameter x = 4965661367192848881.
constexpr u128 kAteLoop = (static_cast<u128>(0x1) << 64) | 0x9d797039be763ba8ULL;
constexpr int kAteLoopTopBit = 64;

// (p^4 - p^2 + 1) / q (761 bits), most significant limb first.
constexpr std::array<std::uint64_t, 12> kHardExponent = {
    0x01baaa710b0759adULL, 0x331ec15183177fafULL, 0x6c0eb522d5b12278ULL,
    0x4e529a5861876f6bULL, 0x3b1b1355d189227dULL, 0x79581e16f3fd90c6ULL,
    0x6b887d56d5095f23ULL, 0xaaa441e3954bcf8aULL, 0xdcc7b44c87cdbacfULL,
    0xf1154e7e1da014fdULL, 0x5abf5cc4f49c36d4ULL, 0xe81bb482ccdf42b1ULL,
};

struct AffineG2 {
  Fp2 x, y;
};

// Line through a twist point T with slope lambda, evaluated at the untwisted
// image of P: yP - lambda xP w + (lambda xT - yT) w^3.
Fp12 line_at(const Fp2& lambda, const AffineG2& t, const Fp& xp, const Fp& yp) {
  Fp12 l = Fp12::zero();
  l.coeff(0) = Fp2{yp, Fp::zero()};
  l.coeff(1) = -(lambda * xp);
  l.coeff(3) = lambda * t.x - t.y;
  return l;
}

// Tangent at T; updates T to 2T.
Fp12 double_step(AffineG2& t, const Fp& xp, const Fp& yp) {
  Fp2 x2 = t.x.square();
  Fp2 lambda = (x2.dbl() + x2) * t.y.dbl().inverse();
  Fp12 l = line_at(lambda, t, xp, yp);
  Fp2 x3 = lambda.square() - t.x.dbl();
  Fp2 y3 = lambda * (t.x - x3) - t.y;
  t = {x3, y3};
  return l;
}

// Chord through T and Q; updates T to T + Q. Returns false for a vertical
// line (T = -Q), whose value lies in Fp6 and vanishes under the final
// exponentiation.
bool add_step(AffineG2& t, const AffineG2& q, const Fp& xp, const Fp& yp, Fp12& out) {
  if (t.x == q.x) {
    if (t.y == q.y) {
      out = double_step(t, xp, yp);
      return true;
    }
    return false;
  }
  Fp2 lambda = (q.y - t.y) * (q.x - t.x).inverse();
  out = line_at(lambda, t, xp, yp);
  Fp2 x3 = lambda.square() - t.x - q.x;
  Fp2 y3 = lambda * (t.x - x3) - t.y;
  t = {x3, y3};
  return true;
}

// Frobenius endomorphism transported to the twist.
AffineG2 twist_frobenius(const AffineG2& q) {
  const auto& gamma = frobenius_coefficients();
  return {q.x.conj() * gamma[2], q.y.conj() * gamma[3]};
}

Fp12 miller_loop(const G1& p, const G2& q) {
  Fp xp, yp;
  p.point().to_affine(xp, yp);
  AffineG2 qa;
  q.point().to_affine(qa.x, qa.y);

  AffineG2 t = qa;
  Fp12 f = Fp12::one();
  for (int i = kAteLoopTopBit - 1; i >= 0; --i) {
    f = f.square() * double_step(t, xp, yp);
    if ((kAteLoop >> i) & 1U) {
      Fp12 l;
      if (add_step(t, qa, xp, yp, l)) f *= l;
    }
  }
  AffineG2 q1 = twist_frobenius(qa);
  AffineG2 q2 = twist_frobenius(q1);
  AffineG2 neg_q2{q2.x, -q2.y};
  Fp12 l;
  if (add_step(t, q1, xp, yp, l)) f *= l;
  if (add_step(t, neg_q2, xp, yp, l)) f *= l;
  return f;
}

Fp12 final_exponentiation(const Fp12& f) {
  // Easy part: f^((p^6 - 1)(p^2 + 1)).
  Fp12 t = f.conj() * f.inverse();
  t = t.frobenius().frobenius() * t;
  // Hard part.
  return t.pow_limbs(kHardExponent);
}

void check_inputs(const G1& a, const G2& b) {
  if (!a.is_valid()) throw Error(Errc::invalid_element, "G1 input off curve");
  if (!b.is_on_curve()) throw Error(Errc::invalid_element, "G2 input off twist");
}

}  // namespace

GT pairing(const G1& a, const G2& b) {
  check_inputs(a, b);
  g_pairings.fetch_add(1, std::memory_order_relaxed);
  ++t_pairings;
  if (a.is_identity() || b.is_identity()) return GT::identity();
  return GT(final_exponentiation(miller_loop(a, b)));
}

GT multi_pairing(std::span<const G1> a, std::span<const G2> b) {
  if (a.size() != b.size()) throw Error(Errc::invalid_argument, "pairing input sizes differ");
  Fp12 f = Fp12::one();
  for (std::size_t i = 0; i < a.size(); ++i) {
    check_inputs(a[i], b[i]);
    g_pairings.fetch_add(1, std::memory_order_relaxed);
    ++t_pairings;
    if (a[i].is_identity() || b[i].is_identity()) continue;
    f *= miller_loop(a[i], b[i]);
  }
  return GT(final_exponentiation(f));
}

std::uint64_t pairing_count() noexcept { return g_pairings.load(std::memory_order_relaxed); }

std::uint64_t thread_pairing_count() noexcept { return t_pairings; }

}  // namespace heez::algebra
