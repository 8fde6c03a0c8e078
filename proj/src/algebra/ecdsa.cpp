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

#include "heez/algebra/ecdsa.hpp"

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/ecdsa.h>
#include <openssl/obj_mac.h>

#include <memory>

#include "heez/algebra/hash.hpp"
#include "heez/error.hpp"

namespace heez::algebra {

namespace {

struct BnFree {
  void operator()(BIGNUM* b) const { BN_clear_free(b); }
};
struct BnCtxFree {
  void operator()(BN_CTX* c) const { BN_CTX_free(c); }
};
struct PointFree {
  void operator()(EC_POINT* p) const { EC_POINT_free(p); }
};
struct SigFree {
  void operator()(ECDSA_SIG* s) const { ECDSA_SIG_free(s); }
};
using Bn = std::unique_ptr<BIGNUM, BnFree>;
using BnCtx = std::unique_ptr<BN_CTX, BnCtxFree>;
using Point = std::unique_ptr<EC_POINT, PointFree>;
using Sig = std::unique_ptr<ECDSA_SIG, SigFree>;

const EC_GROUP* p256() {
  static const EC_GROUP* group = EC_GROUP_new_by_curve_name(NID_X9_62_prime256v1);
  return group;
}

const BIGNUM* order() { return EC_GROUP_get0_order(p256()); }

Bn bn_from(ByteSpan b) { return Bn(BN_bin2bn(b.data(), static_cast<int>(b.size()), nullptr)); }

std::array<std::uint8_t, 32> bn_to32(const BIGNUM* v) {
  std::array<std::uint8_t, 32> out{};
  BN_bn2binpad(v, out.data(), 32);
  return out;
}

void check(int ok) {
  if (ok != 1) throw Error(Errc::invalid_argument, "ecdsa arithmetic failure");
}

// RFC 6979 section 3.2 with HMAC-SHA256 and qlen = 256.
class NonceGenerator {
 public:
  NonceGenerator(const std::array<std::uint8_t, 32>& x, const std::array<std::uint8_t, 32>& h1o) {
    v_.fill(0x01);
    k_.fill(0x00);
    step(0x00, x, h1o);
    step(0x01, x, h1o);
  }

  std::array<std::uint8_t, 32> next() {
    if (started_) {
      Bytes m(v_.begin(), v_.end());
      m.push_back(0x00);
      k_ = hmac_sha256(k_, m);
      v_ = hmac_sha256(k_, v_);
    }
    started_ = true;
    v_ = hmac_sha256(k_, v_);
    return v_;
  }

 private:
  void step(std::uint8_t tag, const std::array<std::uint8_t, 32>& x,
            const std::array<std::uint8_t, 32>& h1o) {
    Bytes m(v_.begin(), v_.end());
    m.push_back(tag);
    m.insert(m.end(), x.begin(), x.end());
    m.insert(m.end(), h1o.begin(), h1o.end());
    k_ = hmac_sha256(k_, m);
    v_ = hmac_sha256(k_, v_);
  }

  Digest256 v_{}, k_{};
  bool started_ = false;
};

EcdsaPublicKey derive_public(const BIGNUM* d, BN_CTX* ctx) {
  Point q(EC_POINT_new(p256()));
  check(EC_POINT_mul(p256(), q.get(), d, nullptr, nullptr, ctx));
  EcdsaPublicKey pub;
  if (EC_POINT_point2oct(p256(), q.get(), POINT_CONVERSION_UNCOMPRESSED, pub.sec1.data(),
                         pub.sec1.size(), ctx) != pub.sec1.size()) {
    throw Error(Errc::invalid_argument, "point encoding failure");
  }
  return pub;
}

}  // namespace

EcdsaKeyPair EcdsaKeyPair::generate(Rng& rng) {
  for (;;) {
    std::array<std::uint8_t, 32> d{};
    rng.fill(d);
    Bn v = bn_from(d);
    if (BN_is_zero(v.get()) || BN_cmp(v.get(), order()) >= 0) continue;
    return from_private(d);
  }
}

EcdsaKeyPair EcdsaKeyPair::from_private(ByteSpan d) {
  if (d.size() != 32) throw Error(Errc::invalid_encoding, "ecdsa private key length");
  Bn v = bn_from(d);
  if (BN_is_zero(v.get()) || BN_cmp(v.get(), order()) >= 0) {
    throw Error(Errc::invalid_encoding, "ecdsa private key out of range");
  }
  BnCtx ctx(BN_CTX_new());
  EcdsaKeyPair kp;
  std::copy(d.begin(), d.end(), kp.d_.begin());
  kp.pub_ = derive_public(v.get(), ctx.get());
  return kp;
}

Bytes EcdsaKeyPair::sign(ByteSpan message) const {
  BnCtx ctx(BN_CTX_new());
  const BIGNUM* n = order();
  Digest256 h1 = sha256(message);
  Bn z = bn_from(h1);
  Bn h1_mod(BN_new());
  check(BN_nnmod(h1_mod.get(), z.get(), n, ctx.get()));
  Bn d = bn_from(d_);

  NonceGenerator nonces(d_, bn_to32(h1_mod.get()));
  Point r_point(EC_POINT_new(p256()));
  Bn x(BN_new());
  for (;;) {
    Bn k = bn_from(nonces.next());
    if (BN_is_zero(k.get()) || BN_cmp(k.get(), n) >= 0) continue;
    check(EC_POINT_mul(p256(), r_point.get(), k.get(), nullptr, nullptr, ctx.get()));
    check(EC_POINT_get_affine_coordinates(p256(), r_point.get(), x.get(), nullptr, ctx.get()));
    Bn r(BN_new());
    check(BN_nnmod(r.get(), x.get(), n, ctx.get()));
    if (BN_is_zero(r.get())) continue;
    // s = k^-1 (z + r d) mod n
    Bn rd(BN_new()), sum(BN_new()), kinv(BN_new()), s(BN_new());
    check(BN_mod_mul(rd.get(), r.get(), d.get(), n, ctx.get()));
    check(BN_mod_add(sum.get(), z.get(), rd.get(), n, ctx.get()));
    if (BN_mod_inverse(kinv.get(), k.get(), n, ctx.get()) == nullptr) continue;
    check(BN_mod_mul(s.get(), kinv.get(), sum.get(), n, ctx.get()));
    if (BN_is_zero(s.get())) continue;

    Sig sig(ECDSA_SIG_new());
    check(ECDSA_SIG_set0(sig.get(), r.release(), s.release()));
    int len = i2d_ECDSA_SIG(sig.get(), nullptr);
    Bytes der(static_cast<std::size_t>(len));
    unsigned char* p = der.data();
    i2d_ECDSA_SIG(sig.get(), &p);
    return der;
  }
}

bool ecdsa_verify(const EcdsaPublicKey& pub, ByteSpan message, ByteSpan der_signature) {
  BnCtx ctx(BN_CTX_new());
  const BIGNUM* n = order();
  const unsigned char* p = der_signature.data();
  Sig sig(d2i_ECDSA_SIG(nullptr, &p, static_cast<long>(der_signature.size())));
  if (!sig || p != der_signature.data() + der_signature.size()) return false;
  const BIGNUM* r = ECDSA_SIG_get0_r(sig.get());
  const BIGNUM* s = ECDSA_SIG_get0_s(sig.get());
  if (BN_is_zero(r) || BN_is_zero(s) || BN_is_negative(r) || BN_is_negative(s) ||
      BN_cmp(r, n) >= 0 || BN_cmp(s, n) >= 0) {
    return false;
  }
  Point q(EC_POINT_new(p256()));
  if (EC_POINT_oct2point(p256(), q.get(), pub.sec1.data(), pub.sec1.size(), ctx.get()) != 1) {
    return false;
  }
  Digest256 h = sha256(message);
  Bn z = bn_from(h);
  Bn w(BN_new()), u1(BN_new()), u2(BN_new()), x(BN_new()), v(BN_new());
  if (BN_mod_inverse(w.get(), s, n, ctx.get()) == nullptr) return false;
  check(BN_mod_mul(u1.get(), z.get(), w.get(), n, ctx.get()));
  check(BN_mod_mul(u2.get(), r, w.get(), n, ctx.get()));
  Point rp(EC_POINT_new(p256()));
  check(EC_POINT_mul(p256(), rp.get(), u1.get(), q.get(), u2.get(), ctx.get()));
  if (EC_POINT_is_at_infinity(p256(), rp.get()) == 1) return false;
  check(EC_POINT_get_affine_coordinates(p256(), rp.get(), x.get(), nullptr, ctx.get()));
  check(BN_nnmod(v.get(), x.get(), n, ctx.get()));
  return BN_cmp(v.get(), r) == 0;
}

}  // namespace heez::algebra
