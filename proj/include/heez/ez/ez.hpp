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

#include <span>
#include <vector>

#include "heez/algebra/ecdsa.hpp"
#include "heez/algebra/params.hpp"
#include "heez/algebra/rng.hpp"
#include "heez/ledger/ledger.hpp"

namespace heez::ez {

using algebra::G1;
using algebra::G2;
using algebra::Rng;
using algebra::Scalar;

/// P_0..P_n, P_i = H("HEEZ-BASE-i").
class CommitmentBases {
 public:
  explicit CommitmentBases(std::size_t attributes);

  const G1& P0() const { return bases_[0]; }
  const G1& operator[](std::size_t i) const { return bases_.at(i); }
  /// Number of attribute bases (excluding P_0).
  std::size_t attributes() const { return bases_.size() - 1; }

 private:
  std::vector<G1> bases_;
};

struct UserKeyPair {
  Scalar sk;
  G1 pk;  // sk * P_0

  static UserKeyPair generate(const CommitmentBases& bases, Rng& rng);
  static UserKeyPair from_secret(const CommitmentBases& bases, const Scalar& sk);
};

struct Opening {
  Scalar r;
  std::vector<Scalar> v;
};

struct Commitment {
  G1 C;
  Opening opening;
};

/// C = r * pk_u + sum v_i * P_i. Throws zero_scalar for r = 0 and
/// attribute_count_exceeds_bases.
Commitment commit(std::span<const Scalar> attrs, const Scalar& r, const G1& pk_u,
                  const CommitmentBases& bases);

// ------------------------------------------------------------- IV binding

struct IvSignature {
  Bytes der;
  algebra::EcdsaPublicKey pk_iv;
};

/// Runs the validation predicate, then signs the canonical encoding of C.
/// Throws validation_refused.
IvSignature iv_issue(const G1& C, const ledger::AttributeClaim& claim,
                     const ledger::ValidationPolicy& policy, const algebra::EcdsaKeyPair& iv_keys);

bool iv_verify(const G1& C, const IvSignature& sig);

// --------------------------------------------------------- opening proof

struct AttributeProof {
  G1 A;
  Scalar t;
  G1 masked;  // v_i * P_i
};

/// Non-interactive Schnorr proofs of knowledge for r and each v_i with
/// s = h(A): t * pk_u == A + s * (r * pk_u), t_i * P_i == A_i + s_i * (v_i * P_i).
struct SchnorrOpeningProof {
  G1 A;
  Scalar t;
  G1 masked_r;  // r * pk_u
  std::vector<AttributeProof> attrs;

  Bytes to_bytes() const;
  static SchnorrOpeningProof from_bytes(ByteSpan in);
};

SchnorrOpeningProof prove_opening(const Commitment& commitment, const G1& pk_u,
                                  const CommitmentBases& bases, Rng& rng);

/// All Schnorr equations plus C == masked_r + sum masked_i.
bool verify_opening(const G1& C, const SchnorrOpeningProof& proof, const G1& pk_u,
                    const CommitmentBases& bases);

// -------------------------------------------------------------- issuance

struct CpKeyPair {
  Scalar sk;
  G2 pk;  // sk * g

  static CpKeyPair generate(Rng& rng);
  static CpKeyPair from_secret(const Scalar& sk);
};

struct Credential {
  static constexpr std::uint8_t kTag = 0x01;

  G1 C;
  Bytes sigma_iv;
  G1 sigma_cp;
  G2 pk_cp;

  /// tag || C || u8 len || DER sigma_IV || sigma_CP || pk_CP
  Bytes to_bytes() const;
  static Credential from_bytes(ByteSpan in);
};

/// Throws iv_signature_invalid, proof_invalid or non_invertible_denominator.
Credential cp_issue(const G1& C, const IvSignature& sigma_iv, const SchnorrOpeningProof& proof,
                    const CpKeyPair& cp_keys, const G1& pk_u, const CommitmentBases& bases);

/// e(sigma_CP, h(C) g + pk_CP) == e(pk_u, g).
bool user_verify(const G1& C, const G1& sigma_cp, const G2& pk_cp, const G1& pk_u);

// ------------------------------------------------------------ presentation

enum class BlindMode {
  /// pk'_u = sk' * P_0 = b * pk_u.
  consistent,
  /// pk'_u = b * sk' * P_0, the literal key-derivation line; fails verification.
  strict,
};

/// Everything the user sends to the SP.
struct BlindedPresentation {
  static constexpr std::size_t kEncodedSize =
      3 * G1::kEncodedSize + 2 * G2::kEncodedSize + 3 * Scalar::kEncodedSize;

  G1 sigma;   // b * sigma_CP
  G1 pk_u;    // pk'_u
  G2 pk_cp;   // b * pk_CP
  G2 P;       // b * g
  Scalar C;   // b * h(C)
  G1 R;       // r' * P_0
  Scalar s;   // h(R')
  Scalar t;   // s' * sk' + r'

  Bytes to_bytes() const;
  static BlindedPresentation from_bytes(ByteSpan in);
};

/// Throws zero_scalar for b = 0.
BlindedPresentation blind(const Credential& credential, const UserKeyPair& user,
                          const CommitmentBases& bases, const Scalar& b, Rng& rng,
                          BlindMode mode = BlindMode::consistent);

struct SpChallengeState {
  Scalar lambda;
  G2 sigma_bar;  // lambda * pk_CP
  G2 pk2;        // lambda * pk'_CP, sent to the user
};

SpChallengeState sp_challenge(const BlindedPresentation& presentation, const G2& pk_cp, Rng& rng);

/// pk''' = b^-1 * pk''.
G2 user_respond(const G2& pk2, const Scalar& b);

/// Throws challenge_mismatch, pairing_check_failed or pok_failed; the
/// checks run in that order and each is independent of the others.
void sp_finish(const SpChallengeState& state, const G2& pk3, const BlindedPresentation& presentation,
               const CommitmentBases& bases);

}  // namespace heez::ez
