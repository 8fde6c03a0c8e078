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

#include "heez/ez/ez.hpp"

#include <string>

#include "heez/algebra/hash.hpp"
#include "heez/algebra/msm.hpp"
#include "heez/error.hpp"
#include "heez/ez/zss.hpp"

namespace heez::ez {

using algebra::hash_to_scalar;

namespace {

G1 read_g1(ByteReader& r) { return G1::from_bytes(r.raw(G1::kEncodedSize)); }
G2 read_g2(ByteReader& r) { return G2::from_bytes(r.raw(G2::kEncodedSize)); }
Scalar read_scalar(ByteReader& r) { return Scalar::from_bytes(r.raw(Scalar::kEncodedSize)); }

algebra::GT e(const G1& a, const G2& b) { return algebra::pairing(a, b); }

}  // namespace

CommitmentBases::CommitmentBases(std::size_t attributes) {
  bases_.reserve(attributes + 1);
  for (std::size_t i = 0; i <= attributes; ++i)
    bases_.push_back(algebra::hash_to_group("HEEZ-BASE-" + std::to_string(i)));
}

UserKeyPair UserKeyPair::generate(const CommitmentBases& bases, Rng& rng) {
  return from_secret(bases, rng.random_scalar());
}

UserKeyPair UserKeyPair::from_secret(const CommitmentBases& bases, const Scalar& sk) {
  if (sk.is_zero()) throw Error(Errc::zero_scalar, "user secret");
  return {sk, sk * bases.P0()};
}

Commitment commit(std::span<const Scalar> attrs, const Scalar& r, const G1& pk_u,
                  const CommitmentBases& bases) {
  if (r.is_zero()) throw Error(Errc::zero_scalar, "commitment randomness");
  if (attrs.size() > bases.attributes())
    throw Error(Errc::attribute_count_exceeds_bases,
                std::to_string(attrs.size()) + " > " + std::to_string(bases.attributes()));
  std::vector<G1> pts{pk_u};
  std::vector<Scalar> ks{r};
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    pts.push_back(bases[i + 1]);
    ks.push_back(attrs[i]);
  }
  return {algebra::msm(pts, ks), {r, {attrs.begin(), attrs.end()}}};
}

IvSignature iv_issue(const G1& C, const ledger::AttributeClaim& claim,
                     const ledger::ValidationPolicy& policy, const algebra::EcdsaKeyPair& iv_keys) {
  if (!ledger::validate_identity(claim, policy)) throw Error(Errc::validation_refused);
  auto enc = C.to_bytes();
  return {iv_keys.sign(enc), iv_keys.public_key()};
}

bool iv_verify(const G1& C, const IvSignature& sig) {
  auto enc = C.to_bytes();
  return algebra::ecdsa_verify(sig.pk_iv, enc, sig.der);
}

Bytes SchnorrOpeningProof::to_bytes() const {
  ByteWriter w;
  w.raw(A.to_bytes());
  w.raw(t.to_bytes());
  w.raw(masked_r.to_bytes());
  w.u32(static_cast<std::uint32_t>(attrs.size()));
  for (auto& a : attrs) {
    w.raw(a.A.to_bytes());
    w.raw(a.t.to_bytes());
    w.raw(a.masked.to_bytes());
  }
  return std::move(w).take();
}

SchnorrOpeningProof SchnorrOpeningProof::from_bytes(ByteSpan in) {
  ByteReader r(in);
  SchnorrOpeningProof p;
  p.A = read_g1(r);
  p.t = read_scalar(r);
  p.masked_r = read_g1(r);
  std::uint32_t n = r.u32();
  constexpr std::size_t kAttr = 2 * G1::kEncodedSize + Scalar::kEncodedSize;
  if (n > r.remaining() / kAttr) throw Error(Errc::invalid_encoding, "attribute proof count");
  for (std::uint32_t i = 0; i < n; ++i) {
    AttributeProof a;
    a.A = read_g1(r);
    a.t = read_scalar(r);
    a.masked = read_g1(r);
    p.attrs.push_back(a);
  }
  r.expect_done();
  return p;
}

SchnorrOpeningProof prove_opening(const Commitment& commitment, const G1& pk_u,
                                  const CommitmentBases& bases, Rng& rng) {
  const Opening& o = commitment.opening;
  if (o.v.size() > bases.attributes()) throw Error(Errc::attribute_count_exceeds_bases);
  SchnorrOpeningProof p;
  Scalar w = rng.random_scalar();
  p.A = w * pk_u;
  p.t = hash_to_scalar(p.A) * o.r + w;
  p.masked_r = o.r * pk_u;
  for (std::size_t i = 0; i < o.v.size(); ++i) {
    const G1& Pi = bases[i + 1];
    Scalar wi = rng.random_scalar();
    AttributeProof a;
    a.A = wi * Pi;
    a.t = hash_to_scalar(a.A) * o.v[i] + wi;
    a.masked = o.v[i] * Pi;
    p.attrs.push_back(a);
  }
  return p;
}

bool verify_opening(const G1& C, const SchnorrOpeningProof& proof, const G1& pk_u,
                    const CommitmentBases& bases) {
  if (proof.attrs.size() > bases.attributes()) return false;
  if (!(proof.t * pk_u == proof.A + hash_to_scalar(proof.A) * proof.masked_r)) return false;
  G1 sum = proof.masked_r;
  for (std::size_t i = 0; i < proof.attrs.size(); ++i) {
    const auto& a = proof.attrs[i];
    const G1& Pi = bases[i + 1];
    if (!(a.t * Pi == a.A + hash_to_scalar(a.A) * a.masked)) return false;
    sum += a.masked;
  }
  return sum == C;
}

CpKeyPair CpKeyPair::generate(Rng& rng) { return from_secret(rng.random_scalar()); }

CpKeyPair CpKeyPair::from_secret(const Scalar& sk) { return {sk, sk * G2::generator()}; }

Bytes Credential::to_bytes() const {
  if (sigma_iv.size() > 255) throw Error(Errc::invalid_argument, "signature too long");
  ByteWriter w;
  w.u8(kTag);
  w.raw(C.to_bytes());
  w.u8(static_cast<std::uint8_t>(sigma_iv.size()));
  w.raw(sigma_iv);
  w.raw(sigma_cp.to_bytes());
  w.raw(pk_cp.to_bytes());
  return std::move(w).take();
}

Credential Credential::from_bytes(ByteSpan in) {
  ByteReader r(in);
  if (r.u8() != kTag) throw Error(Errc::invalid_encoding, "credential tag");
  Credential c;
  c.C = read_g1(r);
  auto der = r.raw(r.u8());
  c.sigma_iv.assign(der.begin(), der.end());
  c.sigma_cp = read_g1(r);
  c.pk_cp = read_g2(r);
  r.expect_done();
  return c;
}

Credential cp_issue(const G1& C, const IvSignature& sigma_iv, const SchnorrOpeningProof& proof,
                    const CpKeyPair& cp_keys, const G1& pk_u, const CommitmentBases& bases) {
  if (!iv_verify(C, sigma_iv)) throw Error(Errc::iv_signature_invalid);
  if (!verify_opening(C, proof, pk_u, bases)) throw Error(Errc::proof_invalid);
  auto sigma = zss_sign(hash_to_scalar(C), cp_keys.sk, pk_u);
  if (!sigma) throw Error(Errc::non_invertible_denominator);
  return {C, sigma_iv.der, *sigma, cp_keys.pk};
}

bool user_verify(const G1& C, const G1& sigma_cp, const G2& pk_cp, const G1& pk_u) {
  return zss_verify(hash_to_scalar(C), sigma_cp, pk_cp, pk_u, G2::generator(), e);
}

Bytes BlindedPresentation::to_bytes() const {
  ByteWriter w;
  w.raw(sigma.to_bytes());
  w.raw(pk_u.to_bytes());
  w.raw(pk_cp.to_bytes());
  w.raw(P.to_bytes());
  w.raw(C.to_bytes());
  w.raw(R.to_bytes());
  w.raw(s.to_bytes());
  w.raw(t.to_bytes());
  return std::move(w).take();
}

BlindedPresentation BlindedPresentation::from_bytes(ByteSpan in) {
  ByteReader r(in);
  BlindedPresentation p;
  p.sigma = read_g1(r);
  p.pk_u = read_g1(r);
  p.pk_cp = read_g2(r);
  p.P = read_g2(r);
  p.C = read_scalar(r);
  p.R = read_g1(r);
  p.s = read_scalar(r);
  p.t = read_scalar(r);
  r.expect_done();
  return p;
}

BlindedPresentation blind(const Credential& credential, const UserKeyPair& user,
                          const CommitmentBases& bases, const Scalar& b, Rng& rng, BlindMode mode) {
  if (b.is_zero()) throw Error(Errc::zero_scalar, "blinding factor");
  BlindedPresentation p;
  Scalar sk2 = b * user.sk;
  p.sigma = b * credential.sigma_cp;
  p.pk_u = mode == BlindMode::strict ? (b * sk2) * bases.P0() : sk2 * bases.P0();
  p.pk_cp = b * credential.pk_cp;
  p.P = b * G2::generator();
  p.C = b * hash_to_scalar(credential.C);
  Scalar r2 = rng.random_scalar();
  p.R = r2 * bases.P0();
  p.s = hash_to_scalar(p.R);
  p.t = p.s * sk2 + r2;
  return p;
}

SpChallengeState sp_challenge(const BlindedPresentation& presentation, const G2& pk_cp, Rng& rng) {
  Scalar lambda = rng.random_scalar();
  return {lambda, lambda * pk_cp, lambda * presentation.pk_cp};
}

G2 user_respond(const G2& pk2, const Scalar& b) {
  if (b.is_zero()) throw Error(Errc::zero_scalar, "blinding factor");
  return b.inverse() * pk2;
}

void sp_finish(const SpChallengeState& state, const G2& pk3, const BlindedPresentation& p,
               const CommitmentBases& bases) {
  if (!(pk3 == state.sigma_bar)) throw Error(Errc::challenge_mismatch);
  if (p.P.is_identity() ||
      !(e(p.sigma, p.C * G2::generator() + p.pk_cp) == e(p.pk_u, p.P)))
    throw Error(Errc::pairing_check_failed);
  if (!(p.s == hash_to_scalar(p.R)) || !(p.t * bases.P0() == p.R + p.s * p.pk_u))
    throw Error(Errc::pok_failed);
}

}  // namespace heez::ez
