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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heez/algebra/ecdsa.hpp"
#include "heez/algebra/params.hpp"
#include "heez/algebra/rng.hpp"
#include "heez/algebra/sealed_box.hpp"
#include "heez/hfaudit/kernels.hpp"
#include "heez/ledger/ledger.hpp"

namespace heez::hfaudit {

using algebra::Rng;
using algebra::SystemParams;
using ledger::TxId;

// ---------------------------------------------------------------- identities

/// Public keys published at enrolment: a signing key and a box key.
struct ParticipantKeys {
  static constexpr std::size_t kEncodedSize = 65 + G1::kEncodedSize;

  algebra::EcdsaPublicKey signing;
  G1 box;

  Bytes to_bytes() const;
  static ParticipantKeys from_bytes(ByteSpan in);
};

/// A participant's id together with its private key material.
struct Participant {
  std::string id;
  algebra::EcdsaKeyPair signer;
  algebra::BoxKeyPair box;

  ParticipantKeys keys() const { return {signer.public_key(), box.pub}; }
  static Participant generate(std::string id, Rng& rng);
};

/// Enrols a participant with the certificate authority. Throws not_approved.
ledger::IdentityRecord register_participant(ledger::Registry& ca, const Participant& who,
                                            ledger::Role role, bool approved);

/// Fetches and decodes a registered participant's published keys.
/// Throws unregistered_user.
ParticipantKeys published_keys(const ledger::Registry& ca, std::string_view id);

// ------------------------------------------------------------------ tagging

struct AuditKeyPair {
  Scalar x;
  G2 y;
};

AuditKeyPair setup(const SystemParams& params, Rng& rng);

inline constexpr std::size_t kMaxBlockBytes = 30;

/// F split into near-equal logical blocks, each further cut into units of at
/// most kMaxBlockBytes so that its big-endian value is below q. Tags,
/// challenges and proofs index the units.
struct FileBlocks {
  std::uint64_t file_size = 0;
  std::uint32_t logical_blocks = 0;
  std::vector<Bytes> blocks;
  std::vector<Scalar> values;
  std::vector<std::uint32_t> parent;

  std::size_t n() const { return blocks.size(); }
  Bytes join() const;
};

/// Throws empty_file for an empty input and invalid_argument unless
/// 1 <= n <= |F|.
FileBlocks split_file(ByteSpan file, std::uint32_t n);

Scalar block_value(ByteSpan block);

struct BlockTagSet {
  std::vector<G1> phi;
  G1 u_m;
};

G1 random_u(const SystemParams& params, Rng& rng);
BlockTagSet gen_tags(const FileBlocks& blocks, const AuditKeyPair& keys, const G1& u_m,
                     Exec exec = Exec::parallel);

// ------------------------------------------------------------------ storage

inline constexpr std::string_view kParamsId = "bn254";

/// User -> CSPT message: tags, file, block count, g, y, the parameter set,
/// {ID, u_m} sealed to the CSPT and a signature over g || u_m.
struct DeliveryMessage {
  std::vector<G1> tags;
  Bytes file;
  std::uint32_t n = 0;
  G2 g;
  G2 y;
  std::string params_id{kParamsId};
  Bytes sealed_id_u;
  Bytes signature;

  Bytes to_bytes() const;
  static DeliveryMessage from_bytes(ByteSpan in);
};

Bytes signed_g_u(const G2& g, const G1& u_m);

DeliveryMessage make_delivery(const Participant& user, const G1& cspt_box, const FileBlocks& blocks,
                              const BlockTagSet& tags, const AuditKeyPair& keys,
                              const SystemParams& params, Rng& rng);

/// CSPT-side local entry for a stored file.
struct StorageRecord {
  std::string user_id;
  Bytes file;
  std::uint32_t n = 0;
  std::vector<G1> tags;
  G1 u_m;
  G1 c_mpk;
  Scalar c_msk;
  TxId ic_m = 0;
};

/// Public audit data posted to the audit channel for one file.
struct AuditPublic {
  std::vector<G1> hashes;
  std::uint32_t n = 0;
  G2 g;
  G2 y;
  std::string params_id{kParamsId};
  G1 u_m;
  Bytes sealed_c_mpk;

  Bytes to_bytes() const;
  static AuditPublic from_bytes(ByteSpan in);
};

struct CsptContext {
  const Participant& cspt;
  const ledger::Registry& registry;
  ledger::Ledger& ledger;
  std::string channel{ledger::kAuditChannel};
  Exec exec = Exec::parallel;
};

struct StoreResult {
  TxId ic_m = 0;
  StorageRecord record;
};

/// Validates a delivery and anchors it on the audit channel. Throws
/// delivery_unreadable, unregistered_user, signature_invalid or
/// hash_mismatch (detail names the first bad unit).
StoreResult store(const DeliveryMessage& delivery, const CsptContext& ctx, Rng& rng);

/// Reads the audit record for ic_m. Throws ledger_record_missing.
AuditPublic load_audit_public(const ledger::Ledger& ledger, std::string_view caller, TxId ic_m,
                              std::string_view channel = ledger::kAuditChannel);

// ----------------------------------------------------------------- auditing

struct ChallengeSeeds {
  std::array<std::uint8_t, 32> sd_bl{};
  std::array<std::uint8_t, 32> sd_ra{};

  static ChallengeSeeds from_seed(std::uint64_t seed);
  static ChallengeSeeds from_rng(Rng& rng);
  friend bool operator==(const ChallengeSeeds&, const ChallengeSeeds&) = default;
};

using Nonce = std::array<std::uint8_t, 16>;

struct AuditChallenge {
  std::uint32_t M = 0;
  std::uint32_t n = 0;
  ChallengeSeeds seeds;
  /// Ledger id of the storage record under audit.
  TxId iu_m = 0;
  std::vector<std::pair<std::string, Nonce>> nonces;
  // Derived from the seeds; not part of the encoding.
  std::vector<std::uint32_t> indices;
  std::vector<Scalar> coeffs;

  Bytes to_bytes() const;
  static AuditChallenge from_bytes(ByteSpan in);
};

/// Indices are PRF(sd_bl) mod n without repeats, coefficients PRF(sd_ra)
/// in Z_q^*. Throws challenge_too_large when M > n and invalid_argument
/// when M == 0.
AuditChallenge gen_challenge(std::uint32_t M, std::uint32_t n, const ChallengeSeeds& seeds,
                             std::span<const std::string> tpa_set, TxId iu_m);

struct AuditProof {
  static constexpr std::size_t kEncodedSize = G1::kEncodedSize + Scalar::kEncodedSize;

  G1 sigma;
  Scalar mu;

  Bytes to_bytes() const;
  static AuditProof from_bytes(ByteSpan in);
  friend bool operator==(const AuditProof&, const AuditProof&) = default;
};

/// Throws missing_block when a challenged unit or tag is not held.
AuditProof gen_proof(const AuditChallenge& challenge, const FileBlocks& blocks,
                     std::span<const G1> tags, Exec exec = Exec::parallel);

/// e(sigma, g) == e(sum nu_i H(F_i) + mu u_m, y).
bool verify_proof(const AuditChallenge& challenge, const AuditProof& proof,
                  const AuditPublic& pub, Exec exec = Exec::parallel);

// ---------------------------------------------------------------- selection

enum class SelectionMode { complete, incomplete };

struct TpaCandidate {
  std::string id;
  double latency_ms = 0;
};

/// DT verifies with the data, LT with the tags; both sets run the full
/// check independently. S is the prover, R the verifier role.
struct AuditAssignment {
  std::vector<std::string> selected;
  std::vector<std::string> DT;
  std::vector<std::string> LT;
  std::uint64_t DTid = 0;
  std::uint64_t LTid = 0;
  std::optional<bool> VoDT;
  std::optional<bool> VoLT;
  std::string S;
  std::string R{"tpa"};

  bool accepted() const { return VoDT.value_or(false) && VoLT.value_or(false); }
};

/// complete: the k lowest-latency candidates (ties by id). incomplete:
/// uniform sample of k from the reported neighbours. Throws
/// insufficient_candidates when k > |candidates| or k == 0.
AuditAssignment select_tpas(std::span<const TpaCandidate> candidates, SelectionMode mode,
                            std::size_t k, Rng& rng);

/// Every TPA in DT and LT runs verify_proof; a verdict holds only if all
/// members of its set accept.
void run_verification(AuditAssignment& assignment, const AuditChallenge& challenge,
                      const AuditProof& proof, const AuditPublic& pub, Exec exec = Exec::parallel);

}  // namespace heez::hfaudit
