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

#include "heez/caudit/maudit.hpp"

#include "heez/algebra/hash.hpp"
#include "heez/error.hpp"

namespace heez::caudit {

KeyConfirmation encblock_confirmation(std::span<const std::uint8_t, 16> key,
                                      std::span<const std::uint8_t, 16> iv) {
  ByteWriter w;
  w.raw(to_bytes_view("EBK-CONFIRM"));
  w.raw(key);
  w.raw(iv);
  auto d = algebra::sha256(w.bytes());
  KeyConfirmation out{};
  std::copy_n(d.begin(), out.size(), out.begin());
  return out;
}

MAudit::MAudit(const ledger::Registry& registry, const ez::CommitmentBases& bases, algebra::G2 pk_cp,
               algebra::Rng& rng)
    : registry_(registry), bases_(bases), pk_cp_(pk_cp), rng_(rng), box_(algebra::BoxKeyPair::generate(rng)) {}

std::uint64_t MAudit::open_channel(const std::string& user, const std::string& peer) {
  for (auto* who : {&user, &peer})
    if (!registry_.is_registered(*who)) throw Error(Errc::unregistered_endpoint, *who);
  std::uint64_t id = next_channel_++;
  channels_[id] = {id, user, peer, true, std::nullopt};
  return id;
}

void MAudit::close_channel(std::uint64_t id) {
  auto it = channels_.find(id);
  if (it == channels_.end()) throw Error(Errc::no_channel, std::to_string(id));
  it->second.open = false;
}

const MAuditChannel& MAudit::channel(std::uint64_t id) const {
  auto it = channels_.find(id);
  if (it == channels_.end()) throw Error(Errc::no_channel, std::to_string(id));
  return it->second;
}

MAuditChannel& MAudit::open_or_throw(std::uint64_t id) {
  auto it = channels_.find(id);
  if (it == channels_.end()) throw Error(Errc::no_channel, std::to_string(id));
  if (!it->second.open) throw Error(Errc::channel_closed, std::to_string(id));
  return it->second;
}

bool MAudit::check_completeness(std::uint64_t id, const SecuredPayload& payload) {
  MAuditChannel& ch = open_or_throw(id);
  bool ok = payload.encblock_segment.size() == EncBlockSegment::kEncodedSize &&
            payload.hf_segment.size() == HfSegment::kEncodedSize && !payload.ez_segment.empty();
  if (ok) {
    try {
      EzSegment::from_bytes(payload.ez_segment);
      auto hf = HfSegment::from_bytes(payload.hf_segment);
      ok = payload.trailer == bit_length_trailer(2 + hf.middle_len + 2);
    } catch (const Error&) {
      ok = false;
    }
  }
  ch.complete = ok;
  return ok;
}

std::uint64_t MAudit::deposit_opening(const ez::Opening& opening) {
  std::uint64_t ref = next_ref_++;
  sealed_[ref] = algebra::seal(box_.pub, encode_opening(opening), rng_);
  return ref;
}

void MAudit::restore_sealed(std::uint64_t ref, Bytes blob) {
  sealed_[ref] = std::move(blob);
  next_ref_ = std::max(next_ref_, ref + 1);
}

Release MAudit::verify_keys_and_release(std::uint64_t id, const SecuredPayload& payload,
                                        const ez::BlindedPresentation& presentation,
                                        const ChallengeResponder& respond,
                                        const KeyConfirmation& encblock_proof) {
  MAuditChannel& ch = open_or_throw(id);
  if (!ch.complete.value_or(false)) throw Error(Errc::incomplete_data);
  EzSegment ez_seg = EzSegment::from_bytes(payload.ez_segment);

  // EZ key: challenge-response, pairing and Schnorr checks, plus binding of
  // the presentation to this payload's commitment (C' g == h(C) P').
  try {
    auto state = ez::sp_challenge(presentation, pk_cp_, rng_);
    ez::sp_finish(state, respond(state.pk2), presentation, bases_);
  } catch (const Error& e) {
    throw Error(Errc::ez_key_failed, std::string(errc_name(e.code())));
  }
  algebra::Scalar hC = algebra::hash_to_scalar(ez_seg.credential.C);
  if (!(presentation.C * algebra::G2::generator() == hC * presentation.P))
    throw Error(Errc::ez_key_failed, "presentation not bound to this commitment");

  EncBlockSegment ebk = EncBlockSegment::from_bytes(payload.encblock_segment);
  if (encblock_proof != ebk.confirm) throw Error(Errc::encblock_key_failed);

  auto it = sealed_.find(ez_seg.opening_ref);
  if (it == sealed_.end()) throw Error(Errc::incomplete_data, "no sealed opening");
  auto plain = algebra::open_sealed(box_.secret, it->second);
  if (!plain) throw Error(Errc::incomplete_data, "sealed opening unreadable");
  return {decode_opening(*plain), true};
}

}  // namespace heez::caudit
