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

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <set>

#include "heez/algebra/ecdsa.hpp"
#include "heez/algebra/hash.hpp"
#include "heez/algebra/msm.hpp"
#include "heez/algebra/params.hpp"
#include "heez/algebra/rng.hpp"
#include "heez/algebra/sealed_box.hpp"
#include "heez/error.hpp"

namespace heez::algebra {
namespace {

using boost::multiprecision::cpp_int;

cpp_int to_cpp(const U256& v) {
  cpp_int out = 0;
  for (int i = 3; i >= 0; --i) out = (out << 64) | cpp_int(v.limb[i]);
  return out;
}

// Extended Euclid, independent of the Fermat inversion used by the field.
cpp_int inverse_oracle(cpp_int a, const cpp_int& m) {
  cpp_int t = 0, new_t = 1, r = m, new_r = a % m;
  while (new_r != 0) {
    cpp_int q = r / new_r;
    cpp_int tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += m;
  return t;
}

TEST(FieldTest, MultiplicationMatchesBigIntegerOracle) {
  Rng rng(1);
  const cpp_int p = to_cpp(Fp::kModulus);
  for (int i = 0; i < 500; ++i) {
    std::array<std::uint8_t, 32> a{}, b{};
    rng.fill(a);
    rng.fill(b);
    Fp x = Fp::from_u256(U256::from_bytes_be(a));
    Fp y = Fp::from_u256(U256::from_bytes_be(b));
    cpp_int xo = to_cpp(x.to_u256()), yo = to_cpp(y.to_u256());
    EXPECT_EQ(to_cpp((x * y).to_u256()), (xo * yo) % p);
    EXPECT_EQ(to_cpp((x + y).to_u256()), (xo + yo) % p);
    EXPECT_EQ(to_cpp((x - y).to_u256()), ((xo - yo) % p + p) % p);
  }
}

TEST(FieldTest, ScalarInverseMatchesExtendedEuclid) {
  Rng rng(2);
  const cpp_int q = to_cpp(Fr::kModulus);
  for (int i = 0; i < 100; ++i) {
    Scalar s = rng.random_scalar();
    EXPECT_EQ(to_cpp(s.inverse().to_u256()), inverse_oracle(to_cpp(s.to_u256()), q));
  }
}

TEST(FieldTest, WideReductionMatchesOracle) {
  Rng rng(3);
  const cpp_int p = to_cpp(Fp::kModulus);
  for (int i = 0; i < 100; ++i) {
    std::array<std::uint8_t, 64> w{};
    rng.fill(w);
    cpp_int v = 0;
    for (auto b : w) v = (v << 8) | b;
    EXPECT_EQ(to_cpp(Fp::from_wide_bytes_be(w).to_u256()), v % p);
  }
}

TEST(TowerTest, InversesAndSquareRoots) {
  Rng rng(4);
  auto rand_fp = [&] { return Fp::from_u64(rng.next_u64()) * Fp::from_u64(rng.next_u64()); };
  for (int i = 0; i < 20; ++i) {
    Fp2 a{rand_fp(), rand_fp()};
    EXPECT_EQ(a * a.inverse(), Fp2::one());
    Fp2 root;
    ASSERT_TRUE(a.square().sqrt(root));
    EXPECT_TRUE(root == a || root == -a);
    Fp6 b{a, a.square(), Fp2{rand_fp(), rand_fp()}};
    EXPECT_EQ(b * b.inverse(), Fp6::one());
    Fp12 c{b, Fp6{a, Fp2::xi(), a * a}};
    EXPECT_EQ(c * c.inverse(), Fp12::one());
    EXPECT_EQ(c.square(), c * c);
  }
}

TEST(TowerTest, FrobeniusIsPthPower) {
  Rng rng(5);
  auto rand_fp2 = [&] { return Fp2{Fp::from_u64(rng.next_u64()), Fp::from_u64(rng.next_u64())}; };
  Fp12 a{Fp6{rand_fp2(), rand_fp2(), rand_fp2()}, Fp6{rand_fp2(), rand_fp2(), rand_fp2()}};
  EXPECT_EQ(a.frobenius(), a.pow(Fp::kModulus));
}

TEST(CurveTest, GeneratorsHaveOrderQ) {
  EXPECT_TRUE(G1::generator().is_valid());
  EXPECT_TRUE(G2::generator().is_valid());
  EXPECT_TRUE(G1(G1::generator().point().mul(Fr::kModulus)).is_identity());
  Scalar minus_one = -Scalar::one();
  EXPECT_EQ(minus_one * G1::generator(), -G1::generator());
  EXPECT_EQ(minus_one * G2::generator(), -G2::generator());
}

TEST(CurveTest, ScalarMultiplicationDistributes) {
  Rng rng(6);
  for (int i = 0; i < 10; ++i) {
    Scalar a = rng.random_scalar(), b = rng.random_scalar();
    EXPECT_EQ((a + b) * G1::generator(), a * G1::generator() + b * G1::generator());
    EXPECT_EQ((a * b) * G2::generator(), a * (b * G2::generator()));
  }
}

TEST(EncodingTest, RoundTripsAndSizes) {
  Rng rng(7);
  for (int i = 0; i < 25; ++i) {
    G1 a = rng.random_scalar() * G1::generator();
    G2 b = rng.random_scalar() * G2::generator();
    Scalar s = rng.random_scalar();
    EXPECT_EQ(G1::from_bytes(a.to_bytes()), a);
    EXPECT_EQ(G2::from_bytes(b.to_bytes()), b);
    EXPECT_EQ(Scalar::from_bytes(s.to_bytes()), s);
  }
  EXPECT_EQ(G1::kEncodedSize, 33u);  // ceil(254 / 8) + flag byte
  EXPECT_EQ(G1::from_bytes(G1::identity().to_bytes()), G1::identity());
  EXPECT_EQ(G2::from_bytes(G2::identity().to_bytes()), G2::identity());
}

TEST(EncodingTest, RejectsMalformedInput) {
  auto enc = G1::generator().to_bytes();
  enc[0] = 0x07;
  EXPECT_THROW(G1::from_bytes(enc), Error);
  std::array<std::uint8_t, 32> big{};
  big.fill(0xff);
  EXPECT_THROW(Scalar::from_bytes(big), Error);
  EXPECT_THROW(G1::from_bytes(Bytes(10, 0)), Error);
}

TEST(EncodingTest, RejectsTwistPointOutsideSubgroup) {
  // Any x on the twist gives a point whose order is a multiple of the
  // (large) cofactor with overwhelming probability.
  for (std::uint64_t k = 1;; ++k) {
    Fp2 x{Fp::from_u64(k), Fp::one()};
    Fp2 y;
    if (!(x.square() * x + G2Curve::b()).sqrt(y)) continue;
    G2 pt = G2::from_affine_unchecked(x, y);
    ASSERT_TRUE(pt.is_on_curve());
    EXPECT_FALSE(pt.is_valid());
    try {
      G2::from_bytes(pt.to_bytes());
      FAIL() << "accepted a point outside the subgroup";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::invalid_element);
    }
    break;
  }
}

// e(P, g) as produced by the py_ecc reference pairing, expressed in this
// library's tower basis (coefficients of w^k over Fp2).
TEST(PairingTest, MatchesReferenceValue) {
  const char* kCoeffs[6][2] = {
      {"12c70e90e12b7874510cd1707e8856f71bf7f61d72631e268fca81000db9a1f5",
       "084f330485b09e866bc2f2ea2b897394deaf3f12aa31f28cb0552990967d4704"},
      {"2c53748bcd21a7c038fb30ddc8ac3bf0af25d7859cfbc12c30c866276c565909",
       "27ed208e7a0b55ae6e710bbfbd2fd922669c026360e37cc5b2ab862411536104"},
      {"0e841c2ac18a4003ac9326b9558380e0bc27fdd375e3605f96b819a358d34bde",
       "2067586885c3318eeffa1938c754fe3c60224ee5ae15e66af6b5104c47c8c5d8"},
      {"1ad9db1937fd72f4ac462173d31d3d6117411fa48dba8d499d762b47edb3b54a",
       "279db296f9d479292532c7c493d8e0722b6efae42158387564889c79fc038ee3"},
      {"01676555de427abc409c4a394bc5426886302996919d4bf4bdd02236e14b3636",
       "2b03614464f04dd772d86df88674c270ffc8747ea13e72da95e3594468f222c4"},
      {"0dc26f240656bbe2029bd441d77c221f0ba4c70c94b29b5f17f0f6d08745a069",
       "108c19d15f9446f744d0f110405d3856d6cc3bda6c4d537663729f5257628417"},
  };
  GT e = pairing(G1::generator(), G2::generator());
  for (std::size_t k = 0; k < 6; ++k) {
    EXPECT_EQ(e.value().coeff(k).c0, Fp::from_u256(U256::from_hex(kCoeffs[k][0]))) << k;
    EXPECT_EQ(e.value().coeff(k).c1, Fp::from_u256(U256::from_hex(kCoeffs[k][1]))) << k;
  }
}

TEST(PairingTest, DegenerateInputGivesIdentity) {
  EXPECT_TRUE(pairing(G1::identity(), G2::generator()).is_identity());
  EXPECT_TRUE(pairing(G1::generator(), G2::identity()).is_identity());
}

TEST(PairingTest, NonDegenerate) {
  EXPECT_FALSE(pairing(G1::generator(), G2::generator()).is_identity());
}

TEST(PairingTest, DoublingFirstArgumentSquares) {
  GT base = pairing(G1::generator(), G2::generator());
  EXPECT_EQ(pairing(Scalar::from_u64(2) * G1::generator(), G2::generator()), base * base);
}

TEST(PairingTest, BilinearOverFiftyRandomPairs) {
  Rng rng(42);
  GT base = pairing(G1::generator(), G2::generator());
  for (int i = 0; i < 50; ++i) {
    Scalar a = rng.random_scalar(), b = rng.random_scalar();
    EXPECT_EQ(pairing(a * G1::generator(), b * G2::generator()), base.pow(a * b));
  }
}

TEST(PairingTest, TargetGroupHasOrderQ) {
  GT base = pairing(G1::generator(), G2::generator());
  EXPECT_TRUE(GT(base.value().pow(Fr::kModulus)).is_identity());
  EXPECT_EQ(base * base.inverse(), GT::identity());
}

TEST(PairingTest, MultiPairingEqualsProduct) {
  Rng rng(8);
  std::vector<G1> a;
  std::vector<G2> b;
  GT expected;
  for (int i = 0; i < 3; ++i) {
    a.push_back(rng.random_scalar() * G1::generator());
    b.push_back(rng.random_scalar() * G2::generator());
    expected = expected * pairing(a.back(), b.back());
  }
  EXPECT_EQ(multi_pairing(a, b), expected);
}

TEST(PairingTest, RejectsOffCurveInput) {
  G2 bad = G2::from_affine_unchecked(Fp2::one(), Fp2::one());
  try {
    pairing(G1::generator(), bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_element);
  }
}

TEST(PairingTest, CounterAdvances) {
  auto before = pairing_count();
  pairing(G1::generator(), G2::generator());
  EXPECT_EQ(pairing_count(), before + 1);
}

TEST(HashToGroupTest, Deterministic) {
  Bytes b = to_bytes("block-17");
  EXPECT_EQ(hash_to_group(b), hash_to_group(b));
}

TEST(HashToGroupTest, EmptyInputIsValidNonIdentity) {
  G1 h = hash_to_group(Bytes{});
  EXPECT_TRUE(h.is_valid());
  EXPECT_FALSE(h.is_identity());
}

TEST(HashToGroupTest, AppendingZeroByteChangesOutput) {
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    Bytes b(rng.uniform(64));
    rng.fill(b);
    Bytes b0 = b;
    b0.push_back(0x00);
    ASSERT_NE(hash_to_group(b), hash_to_group(b0));
  }
}

TEST(HashToScalarTest, DeterministicAndDistinct) {
  Rng rng(10);
  std::set<std::array<std::uint8_t, 32>> seen;
  for (int i = 0; i < 1000; ++i) {
    G1 pt = rng.random_scalar() * G1::generator();
    Scalar s = hash_to_scalar(pt);
    EXPECT_EQ(s, hash_to_scalar(pt));
    EXPECT_TRUE(seen.insert(s.to_bytes()).second);
  }
}

TEST(HashToScalarTest, NeverZeroOverSample) {
  G1 pt = G1::generator();
  for (int i = 0; i < 100000; ++i) {
    ASSERT_FALSE(hash_to_scalar(pt).is_zero());
    pt += G1::generator();
  }
}

TEST(RngTest, SeededStreamsReproduce) {
  Rng a(123), b(123), c(124);
  Scalar first_a = a.random_scalar();
  EXPECT_EQ(first_a, b.random_scalar());
  EXPECT_NE(first_a, c.random_scalar());
  for (int i = 0; i < 1000; ++i) {
    Scalar s = a.random_scalar();
    EXPECT_FALSE(s.is_zero());
    EXPECT_LT(s.to_u256(), Fr::kModulus);
  }
}

TEST(RngTest, UniformStaysInBound) {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(rng.uniform(7), 7u);
  EXPECT_THROW(rng.uniform(0), Error);
}

TEST(EcdsaTest, DeterministicNonceVector) {
  // RFC 6979 A.2.5, P-256 with SHA-256, message "sample".
  auto kp = EcdsaKeyPair::from_private(
      from_hex("c9afa9d845ba75166b5c215767b1d6934e50c3db36e89b127b8a622b120f6721"));
  EXPECT_EQ(to_hex(kp.public_key().sec1),
            "0460fed4ba255a9d31c961eb74c6356d68c049b8923b61fa6ce669622e60f29fb6"
            "7903fe1008b8bc99a41ae9e95628bc64f2f1b20c2d7e9f5177a3c294d4462299");
  EXPECT_EQ(to_hex(kp.sign(to_bytes("sample"))),
            "3046022100efd48b2aacb6a8fd1140dd9cd45e81d69d2c877b56aaf991c34d0ea84eaf3716"
            "022100f7cb1c942d657c41d436c7a1b6e29f65f3e900dbb9aff4064dc4ab2f843acda8");
}

TEST(EcdsaTest, SignVerifyAndTamper) {
  Rng rng(12);
  auto kp = EcdsaKeyPair::generate(rng);
  Bytes msg = to_bytes("commitment bytes");
  Bytes sig = kp.sign(msg);
  EXPECT_TRUE(ecdsa_verify(kp.public_key(), msg, sig));
  Bytes other = msg;
  other[0] ^= 1;
  EXPECT_FALSE(ecdsa_verify(kp.public_key(), other, sig));
  Bytes bad = sig;
  bad[bad.size() - 1] ^= 1;
  EXPECT_FALSE(ecdsa_verify(kp.public_key(), msg, bad));
  auto kp2 = EcdsaKeyPair::generate(rng);
  EXPECT_FALSE(ecdsa_verify(kp2.public_key(), msg, sig));
}

TEST(SealedBoxTest, RoundTripAndWrongKey) {
  Rng rng(13);
  auto kp = BoxKeyPair::generate(rng);
  Bytes msg = to_bytes("ID || u_m");
  Bytes sealed = seal(kp.pub, msg, rng);
  EXPECT_EQ(sealed.size(), msg.size() + kSealOverhead);
  auto opened = open_sealed(kp.secret, sealed);
  ASSERT_TRUE(opened.has_value());
  EXPECT_EQ(*opened, msg);
  EXPECT_FALSE(open_sealed(rng.random_scalar(), sealed).has_value());
  sealed[40] ^= 1;
  EXPECT_FALSE(open_sealed(kp.secret, sealed).has_value());
}

TEST(Msm, MatchesNaiveSum) {
  Rng rng(77);
  for (std::size_t n : {0u, 1u, 7u, 8u, 33u, 200u}) {
    std::vector<G1> pts;
    std::vector<Scalar> ks;
    for (std::size_t i = 0; i < n; ++i) {
      pts.push_back(rng.random_scalar() * G1::generator());
      ks.push_back(i % 5 == 0 ? Scalar::zero() : rng.random_scalar());
    }
    EXPECT_EQ(msm(pts, ks), msm_naive(pts, ks)) << n;
  }
}

TEST(Msm, SmallAndEdgeScalars) {
  std::vector<G1> pts(40, G1::generator());
  std::vector<Scalar> ks(40, Scalar::one());
  ks[3] = -Scalar::one();
  EXPECT_EQ(msm(pts, ks), Scalar::from_u64(38) * G1::generator());
}

TEST(Msm, FixedBaseMatchesGeneric) {
  Rng rng(78);
  G1 base = rng.random_scalar() * G1::generator();
  G1FixedBase table(base);
  EXPECT_TRUE(table.mul(Scalar::zero()).is_identity());
  EXPECT_EQ(table.mul(-Scalar::one()), -base);
  for (int i = 0; i < 20; ++i) {
    Scalar k = rng.random_scalar();
    EXPECT_EQ(table.mul(k), k * base);
  }
}

}  // namespace
}  // namespace heez::algebra
