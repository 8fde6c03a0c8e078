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

#include "heez/ledger/ledger.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>
#include <sstream>

#include "heez/algebra/hash.hpp"
#include "heez/algebra/rng.hpp"
#include "heez/algebra/sealed_box.hpp"
#include "heez/error.hpp"

namespace heez::ledger {

namespace {

algebra::AeadNonce nonce_for(TxId id) {
  algebra::AeadNonce n{};
  for (int i = 0; i < 8; ++i) n[11 - i] = static_cast<std::uint8_t>(id >> (8 * i));
  return n;
}

std::string_view kind_name(TxKind k) { return k == TxKind::tpa_credential ? "tpa" : "data"; }

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw Error(Errc::invalid_encoding, "ledger log");
  return v;
}

}  // namespace

Ledger::Ledger(const Registry& registry, const caudit::LogicalClock& clock, std::uint64_t key_seed)
    : registry_(registry), clock_(clock) {
  algebra::Rng rng(key_seed);
  rng.fork("ledger-channel-keys").fill(master_key_);
}

void Ledger::create_channel(std::string name, std::vector<std::string> participants,
                            std::string anchor, std::string contract_module) {
  for (auto& p : participants)
    if (!registry_.is_registered(p)) throw Error(Errc::unregistered_user, p);
  std::unique_lock lock(mu_);
  if (channels_.count(name)) throw Error(Errc::duplicate_channel, name);
  Channel ch;
  ch.name = name;
  ch.participants.insert(participants.begin(), participants.end());
  ch.anchor_node = std::move(anchor);
  ch.contract_module = std::move(contract_module);
  ch.key = algebra::hmac_sha256(master_key_, to_bytes(name));
  channels_.emplace(std::move(name), std::move(ch));
}

void Ledger::add_participant(std::string_view channel, std::string participant) {
  if (!registry_.is_registered(participant)) throw Error(Errc::unregistered_user, participant);
  std::unique_lock lock(mu_);
  auto it = channels_.find(channel);
  if (it == channels_.end()) throw Error(Errc::unknown_channel, std::string(channel));
  it->second.participants.insert(std::move(participant));
}

bool Ledger::has_channel(std::string_view name) const {
  std::shared_lock lock(mu_);
  return channels_.find(name) != channels_.end();
}

bool Ledger::is_participant(std::string_view channel, std::string_view id) const {
  std::shared_lock lock(mu_);
  auto it = channels_.find(channel);
  return it != channels_.end() && it->second.participants.count(id) != 0;
}

const Channel& Ledger::channel_or_throw(std::string_view name) const {
  auto it = channels_.find(name);
  if (it == channels_.end()) throw Error(Errc::unknown_channel, std::string(name));
  return it->second;
}

LedgerTransaction Ledger::append_locked(Channel& ch, std::string_view submitter, ByteSpan payload,
                                        TxKind kind, TxId id, std::uint64_t timestamp) {
  LedgerTransaction tx;
  tx.id = id;
  tx.channel = ch.name;
  tx.submitter = std::string(submitter);
  tx.timestamp = timestamp;
  tx.kind = kind;
  tx.digest = algebra::sha256(payload);
  tx.payload = algebra::aead_seal(ch.key, nonce_for(id), payload);
  ch.record_book.push_back(tx);
  return tx;
}

TxId Ledger::submit(std::string_view channel, std::string_view submitter, ByteSpan payload,
                    TxKind kind) {
  std::unique_lock lock(mu_);
  auto it = channels_.find(channel);
  if (it == channels_.end()) throw Error(Errc::unknown_channel, std::string(channel));
  Channel& ch = it->second;
  if (!ch.participants.count(submitter)) throw Error(Errc::non_participant, std::string(submitter));
  if (kind == TxKind::tpa_credential && !registry_.has_role(submitter, Role::admin))
    throw Error(Errc::non_admin_tpa_write, std::string(submitter));
  TxId id = next_id_++;
  append_locked(ch, submitter, payload, kind, id, clock_.now());
  return id;
}

void Ledger::check_digest(const LedgerTransaction& tx) const {
  if (algebra::sha256(tx.payload) != tx.digest) throw Error(Errc::digest_mismatch, std::to_string(tx.id));
}

LedgerTransaction Ledger::reveal(const Channel& ch, const LedgerTransaction& stored) const {
  LedgerTransaction tx = stored;
  auto plain = algebra::aead_open(ch.key, nonce_for(stored.id), stored.payload);
  if (!plain) throw Error(Errc::digest_mismatch, std::to_string(stored.id));
  tx.payload = std::move(*plain);
  check_digest(tx);
  return tx;
}

std::vector<LedgerTransaction> Ledger::query(std::string_view channel, std::string_view caller,
                                             const TxPredicate& predicate) const {
  std::shared_lock lock(mu_);
  const Channel& ch = channel_or_throw(channel);
  if (!ch.participants.count(caller)) throw Error(Errc::non_participant, std::string(caller));
  std::vector<LedgerTransaction> out;
  for (auto& stored : ch.record_book) {
    LedgerTransaction tx = reveal(ch, stored);
    if (!predicate || predicate(tx)) out.push_back(std::move(tx));
  }
  return out;
}

std::optional<LedgerTransaction> Ledger::find(std::string_view channel, std::string_view caller,
                                              TxId id) const {
  std::shared_lock lock(mu_);
  const Channel& ch = channel_or_throw(channel);
  if (!ch.participants.count(caller)) throw Error(Errc::non_participant, std::string(caller));
  auto it = std::lower_bound(ch.record_book.begin(), ch.record_book.end(), id,
                             [](const LedgerTransaction& t, TxId v) { return t.id < v; });
  if (it == ch.record_book.end() || it->id != id) return std::nullopt;
  return reveal(ch, *it);
}

std::string Ledger::export_log() const {
  std::shared_lock lock(mu_);
  std::vector<LedgerTransaction> all;
  for (auto& [_, ch] : channels_)
    for (auto& stored : ch.record_book) all.push_back(reveal(ch, stored));
  std::sort(all.begin(), all.end(), [](auto& a, auto& b) { return a.id < b.id; });
  std::ostringstream os;
  for (auto& tx : all) {
    os << tx.id << ' ' << tx.channel << ' ' << tx.submitter << ' '
       << (tx.payload.empty() ? "-" : to_hex(tx.payload)) << ' ' << tx.timestamp << ' '
       << kind_name(tx.kind) << ' ' << to_hex(tx.digest) << '\n';
  }
  return os.str();
}

void Ledger::import_log(std::string_view log) {
  std::unique_lock lock(mu_);
  std::istringstream is{std::string(log)};
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string id, channel, submitter, payload_hex, ts, kind, digest_hex, extra;
    if (!(ls >> id >> channel >> submitter >> payload_hex >> ts >> kind >> digest_hex) || (ls >> extra))
      throw Error(Errc::invalid_encoding, "ledger log line");
    Bytes payload = payload_hex == "-" ? Bytes{} : from_hex(payload_hex);
    Bytes digest = from_hex(digest_hex);
    auto actual = algebra::sha256(payload);
    if (digest.size() != actual.size() || !std::equal(actual.begin(), actual.end(), digest.begin()))
      throw Error(Errc::digest_mismatch, id);
    if (kind != "data" && kind != "tpa") throw Error(Errc::invalid_encoding, "ledger log kind");
    auto it = channels_.find(channel);
    if (it == channels_.end()) throw Error(Errc::unknown_channel, channel);
    TxId tx_id = parse_u64(id);
    if (tx_id < next_id_) throw Error(Errc::invalid_encoding, "ledger log ids must increase");
    append_locked(it->second, submitter, payload, kind == "tpa" ? TxKind::tpa_credential : TxKind::data,
                  tx_id, parse_u64(ts));
    next_id_ = tx_id + 1;
  }
}

std::size_t Ledger::transaction_count() const {
  std::shared_lock lock(mu_);
  std::size_t n = 0;
  for (auto& [_, ch] : channels_) n += ch.record_book.size();
  return n;
}

bool validate_identity(const AttributeClaim& claim, const ValidationPolicy& policy) {
  if (claim.values.empty()) throw Error(Errc::malformed_claim, "no attribute values");
  if (!policy.ranges.empty() && policy.ranges.rbegin()->first >= claim.values.size())
    throw Error(Errc::malformed_claim, "policy references a missing attribute");
  if (policy.require_documents &&
      std::all_of(claim.documents_digest.begin(), claim.documents_digest.end(),
                  [](std::uint8_t b) { return b == 0; }))
    return false;
  for (auto& [idx, range] : policy.ranges) {
    std::uint64_t v = claim.values[idx];
    if (v < range.lo || v > range.hi) return false;
  }
  return true;
}

}  // namespace heez::ledger
