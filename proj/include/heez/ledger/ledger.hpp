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
#include <functional>
#include <optional>
#include <map>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "heez/bytes.hpp"
#include "heez/caudit/clock.hpp"
#include "heez/ledger/registry.hpp"

namespace heez::ledger {

using TxId = std::uint64_t;

inline constexpr std::string_view kAuditChannel = "audit";
inline constexpr std::string_view kCredentialChannel = "credential";

enum class TxKind { data, tpa_credential };

struct LedgerTransaction {
  TxId id = 0;
  std::string channel;
  std::string submitter;
  Bytes payload;
  std::uint64_t timestamp = 0;
  TxKind kind = TxKind::data;
  /// SHA-256 of the payload, fixed at append time and re-checked on read.
  std::array<std::uint8_t, 32> digest{};

  friend bool operator==(const LedgerTransaction&, const LedgerTransaction&) = default;
};

/// Record-book entries hold the payload sealed under the channel key; the
/// plaintext is only recovered through Ledger::query.
struct Channel {
  std::string name;
  std::set<std::string, std::less<>> participants;
  std::string anchor_node;
  std::string contract_module;
  std::vector<LedgerTransaction> record_book;
  std::array<std::uint8_t, 32> key{};
};

using TxPredicate = std::function<bool(const LedgerTransaction&)>;

/// In-process permissioned ledger. A single sequencer assigns globally
/// increasing ids; channels are isolated record books. Appends serialize,
/// reads run concurrently.
class Ledger {
 public:
  /// `key_seed` derives the per-channel sealing keys.
  Ledger(const Registry& registry, const caudit::LogicalClock& clock, std::uint64_t key_seed = 0);

  /// Participants must be enrolled. Throws duplicate_channel or
  /// unregistered_user.
  void create_channel(std::string name, std::vector<std::string> participants,
                      std::string anchor, std::string contract_module = {});
  void add_participant(std::string_view channel, std::string participant);
  bool has_channel(std::string_view name) const;
  bool is_participant(std::string_view channel, std::string_view id) const;

  /// Appends to the channel's record book. TPA-credential records may only
  /// come from an admin. Throws unknown_channel, non_participant or
  /// non_admin_tpa_write.
  TxId submit(std::string_view channel, std::string_view submitter, ByteSpan payload,
              TxKind kind = TxKind::data);

  /// Ordered by id; never crosses channels. Every returned payload is
  /// checked against its recorded digest (digest_mismatch).
  std::vector<LedgerTransaction> query(std::string_view channel, std::string_view caller,
                                       const TxPredicate& predicate = {}) const;

  /// Record lookup by id within one channel (caller must participate).
  std::optional<LedgerTransaction> find(std::string_view channel, std::string_view caller,
                                        TxId id) const;

  /// Line-delimited export: id channel submitter payload-hex timestamp kind digest-hex.
  std::string export_log() const;
  /// Rebuilds record books from an exported log into existing channels.
  /// Rejects lines whose payload does not match the recorded digest.
  void import_log(std::string_view log);

  std::size_t transaction_count() const;

 private:
  const Channel& channel_or_throw(std::string_view name) const;
  void check_digest(const LedgerTransaction& tx) const;

  LedgerTransaction append_locked(Channel& ch, std::string_view submitter, ByteSpan payload,
                                  TxKind kind, TxId id, std::uint64_t timestamp);
  LedgerTransaction reveal(const Channel& ch, const LedgerTransaction& stored) const;

  const Registry& registry_;
  const caudit::LogicalClock& clock_;
  mutable std::shared_mutex mu_;
  std::map<std::string, Channel, std::less<>> channels_;
  TxId next_id_ = 1;
  std::array<std::uint8_t, 32> master_key_{};
};

/// Attribute values with a digest of the supporting documents.
struct AttributeClaim {
  std::vector<std::uint64_t> values;
  std::array<std::uint8_t, 32> documents_digest{};
};

struct AttributeRange {
  std::uint64_t lo = 0;
  std::uint64_t hi = UINT64_MAX;
};

/// Inclusive ranges keyed by attribute index; an empty policy accepts every
/// well-formed claim.
struct ValidationPolicy {
  std::map<std::size_t, AttributeRange> ranges;
  bool require_documents = false;
};

/// Identity-validator predicate. Throws malformed_claim for a claim with no
/// values or one shorter than the policy's highest index.
bool validate_identity(const AttributeClaim& claim, const ValidationPolicy& policy);

}  // namespace heez::ledger
