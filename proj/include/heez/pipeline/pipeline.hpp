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
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "heez/caudit/clock.hpp"
#include "heez/caudit/maudit.hpp"
#include "heez/caudit/payload.hpp"
#include "heez/caudit/schedule.hpp"
#include "heez/encblock/cipher.hpp"
#include "heez/ez/ez.hpp"
#include "heez/hfaudit/hfaudit.hpp"
#include "heez/ledger/ledger.hpp"

namespace heez::pipeline {

using algebra::G1;
using algebra::G2;
using caudit::SecuredPayload;
using ledger::TxId;

struct PipelineConfig {
  /// Logical blocks requested from split_file (capped at the input size).
  std::uint32_t blocks = 16;
  /// Units challenged by the decrypt-time audit; 0 challenges every unit.
  std::uint32_t challenge = 0;
  std::uint32_t tpas = 2;
  /// Registered TPAs the complete-information selector picks from.
  std::uint32_t tpa_pool = 16;
  hfaudit::Exec exec = hfaudit::Exec::parallel;
  caudit::CauditConfig caudit;

  /// Reads the "pipeline" and "caudit" objects; throws invalid_argument.
  static PipelineConfig from_json(std::string_view text);
};

/// Everything a user holds. Derived from (seed, id) so the CLI can rebuild it.
struct UserAccount {
  hfaudit::Participant participant;
  ez::UserKeyPair ez_keys;
  hfaudit::AuditKeyPair audit_keys;
  encblock::Key128 encblock_key{};

  const std::string& id() const { return participant.id; }
  static UserAccount derive(const std::string& id, std::uint64_t seed, const ez::CommitmentBases& bases);
};

/// What the CSPT keeps per stored file: the HF-layer record and the routed
/// middle segment.
struct CsptEntry {
  std::string user_id;
  std::uint32_t n = 0;
  Bytes file;
  std::vector<G1> tags;
  G1 u_m;
  Bytes middle;
};

/// Canonical HF-layer serialization: F[0:2] || meta || F[2:], with meta =
/// u64 |F| || u32 n || u64 ic_m || u32 count || tags.
struct HfSerialization {
  Bytes file;
  std::uint32_t n = 0;
  TxId ic_m = 0;
  std::vector<G1> tags;

  Bytes to_bytes() const;
  static HfSerialization from_bytes(ByteSpan in);
};

struct Segments {
  std::uint16_t head = 0;
  Bytes middle;
  std::uint16_t tail = 0;
};

/// Head and tail are the first and last big-endian 16-bit words. Throws
/// data_too_short below 6 bytes.
Segments split_segments(ByteSpan serialization);
Bytes join_segments(const Segments& s);

/// Stage-entry counters for the decrypt path.
struct StageCounters {
  std::uint64_t channel_open = 0;
  std::uint64_t ez_check = 0;
  std::uint64_t head_decrypt = 0;
  std::uint64_t concat = 0;
  std::uint64_t second_channel = 0;
  std::uint64_t audit = 0;
  std::uint64_t release = 0;
};

struct AuditOutcome {
  bool accepted = false;
  hfaudit::AuditAssignment assignment;
  hfaudit::AuditChallenge challenge;
  hfaudit::AuditProof proof;
};

/// One simulated network: CA, ledger, CSPT, IV, CP, M-Audit, admin and TPAs.
class Deployment {
 public:
  static constexpr std::size_t kMinInput = 6;

  explicit Deployment(std::uint64_t seed, PipelineConfig config = {});
  Deployment(const Deployment&) = delete;
  Deployment& operator=(const Deployment&) = delete;

  /// Derives and enrols a user; idempotent.
  const UserAccount& add_user(const std::string& id);
  const UserAccount& user(const std::string& id) const;
  std::vector<std::string> user_ids() const;

  /// Throws unregistered_user, data_too_short, or a sub-protocol error.
  SecuredPayload encrypt(ByteSpan data, const UserAccount& user);
  /// Throws incomplete_data, ez_key_failed, encblock_key_failed,
  /// audit_failed or unregistered_endpoint; nothing is returned on failure.
  Bytes decrypt(const SecuredPayload& payload, const UserAccount& user);

  /// CSPT proves possession of a stored file to freshly selected TPAs.
  AuditOutcome audit(TxId ic_m, std::uint32_t M, std::uint32_t tpas);
  /// Same, with a caller-made assignment (e.g. incomplete-information selection).
  AuditOutcome audit(TxId ic_m, std::uint32_t M, hfaudit::AuditAssignment assignment);

  ledger::Ledger& ledger() { return *ledger_; }
  const ledger::Registry& registry() const { return registry_; }
  caudit::Scheduler& scheduler() { return scheduler_; }
  caudit::MAudit& maudit() { return *maudit_; }
  std::map<TxId, CsptEntry>& cspt_store() { return cspt_store_; }
  const StageCounters& counters() const { return counters_; }
  const PipelineConfig& config() const { return config_; }
  const ez::CommitmentBases& bases() const { return bases_; }

  /// Persists users, CSPT store, sealed openings and the ledger log.
  void save(const std::filesystem::path& dir) const;
  /// Rebuilds a deployment saved with the same seed.
  static std::unique_ptr<Deployment> load(const std::filesystem::path& dir, std::uint64_t seed,
                                          PipelineConfig config = {});

 private:
  void set_epoch(std::uint64_t epoch);
  hfaudit::CsptContext cspt_ctx();
  hfaudit::AuditAssignment pick_tpas(std::uint32_t k);
  bool run_audit(const hfaudit::FileBlocks& blocks, std::span<const G1> tags, TxId ic_m,
                 std::uint32_t M, hfaudit::AuditAssignment assignment, AuditOutcome* out);

  std::uint64_t seed_;
  PipelineConfig config_;
  algebra::Rng infra_rng_;
  algebra::Rng session_rng_;
  // Referenced by the M-Audit instance; reseeded per epoch.
  algebra::Rng maudit_rng_;
  std::uint64_t epoch_ = 0;
  ledger::Registry registry_;
  caudit::LogicalClock clock_;
  std::unique_ptr<ledger::Ledger> ledger_;
  caudit::Scheduler scheduler_;
  ez::CommitmentBases bases_{1};
  hfaudit::Participant cspt_;
  algebra::EcdsaKeyPair iv_;
  ez::CpKeyPair cp_;
  std::vector<hfaudit::TpaCandidate> tpa_pool_;
  std::unique_ptr<caudit::MAudit> maudit_;
  std::map<std::string, UserAccount> users_;
  std::map<TxId, CsptEntry> cspt_store_;
  StageCounters counters_;
};

}  // namespace heez::pipeline
