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
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "heez/algebra/sealed_box.hpp"
#include "heez/caudit/payload.hpp"
#include "heez/ez/ez.hpp"
#include "heez/ledger/registry.hpp"

namespace heez::caudit {

struct MAuditChannel {
  std::uint64_t id = 0;
  std::string user;
  std::string peer;
  bool open = false;
  std::optional<bool> complete;
};

/// What the user answers to the SP challenge (pk'' -> pk''').
using ChallengeResponder = std::function<algebra::G2(const algebra::G2&)>;

struct Release {
  ez::Opening opening;
  bool encblock_authorized = false;
};

/// M-Audit: supervises verification channels and holds the sealed EZ
/// openings. An opening leaves the store only through
/// verify_keys_and_release after both key checks pass.
class MAudit {
 public:
  MAudit(const ledger::Registry& registry, const ez::CommitmentBases& bases, algebra::G2 pk_cp,
         algebra::Rng& rng);

  /// Both endpoints must be registered (unregistered_endpoint).
  std::uint64_t open_channel(const std::string& user, const std::string& peer);
  void close_channel(std::uint64_t id);
  /// Throws no_channel.
  const MAuditChannel& channel(std::uint64_t id) const;

  /// Throws no_channel or channel_closed.
  bool check_completeness(std::uint64_t id, const SecuredPayload& payload);

  /// Seals an opening under the M-Audit key and returns its reference.
  std::uint64_t deposit_opening(const ez::Opening& opening);

  /// EZ presentation first (ez_key_failed), then the Enc-Block key
  /// confirmation (encblock_key_failed); only then the opening is unsealed.
  Release verify_keys_and_release(std::uint64_t id, const SecuredPayload& payload,
                                  const ez::BlindedPresentation& presentation,
                                  const ChallengeResponder& respond,
                                  const KeyConfirmation& encblock_proof);

  std::size_t sealed_count() const { return sealed_.size(); }
  /// Sealed blobs by reference, for persisting the store.
  const std::map<std::uint64_t, Bytes>& sealed() const { return sealed_; }
  void restore_sealed(std::uint64_t ref, Bytes blob);

 private:
  MAuditChannel& open_or_throw(std::uint64_t id);

  const ledger::Registry& registry_;
  const ez::CommitmentBases& bases_;
  algebra::G2 pk_cp_;
  algebra::Rng& rng_;
  algebra::BoxKeyPair box_;
  std::map<std::uint64_t, MAuditChannel> channels_;
  std::map<std::uint64_t, Bytes> sealed_;
  std::uint64_t next_channel_ = 1;
  std::uint64_t next_ref_ = 1;
};

/// SHA-256("EBK-CONFIRM" || key || IV) truncated to 8 bytes.
KeyConfirmation encblock_confirmation(std::span<const std::uint8_t, 16> key,
                                      std::span<const std::uint8_t, 16> iv);

}  // namespace heez::caudit
