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

#include "heez/error.hpp"

namespace heez {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_element: return "invalid-element";
    case Errc::invalid_encoding: return "invalid-encoding";
    case Errc::padding_error: return "padding-error";
    case Errc::attribute_count_exceeds_bases: return "attribute-count-exceeds-bases";
    case Errc::zero_scalar: return "zero-scalar";
    case Errc::validation_refused: return "validation-refused";
    case Errc::iv_signature_invalid: return "iv-signature-invalid";
    case Errc::proof_invalid: return "proof-invalid";
    case Errc::non_invertible_denominator: return "non-invertible-denominator";
    case Errc::challenge_mismatch: return "challenge-mismatch";
    case Errc::pairing_check_failed: return "pairing-check-failed";
    case Errc::pok_failed: return "pok-failed";
    case Errc::not_approved: return "not-approved";
    case Errc::empty_file: return "empty-file";
    case Errc::unregistered_user: return "unregistered-user";
    case Errc::hash_mismatch: return "hash-mismatch";
    case Errc::challenge_too_large: return "challenge-too-large";
    case Errc::missing_block: return "missing-block";
    case Errc::ledger_record_missing: return "ledger-record-missing";
    case Errc::insufficient_candidates: return "insufficient-candidates";
    case Errc::delivery_unreadable: return "delivery-unreadable";
    case Errc::signature_invalid: return "signature-invalid";
    case Errc::duplicate_channel: return "duplicate-channel";
    case Errc::unknown_channel: return "unknown-channel";
    case Errc::non_participant: return "non-participant";
    case Errc::non_admin_tpa_write: return "non-admin-tpa-write";
    case Errc::malformed_claim: return "malformed-claim";
    case Errc::digest_mismatch: return "digest-mismatch";
    case Errc::unregistered_endpoint: return "unregistered-endpoint";
    case Errc::channel_closed: return "channel-closed";
    case Errc::no_channel: return "no-channel";
    case Errc::ez_key_failed: return "ez-key-failed";
    case Errc::encblock_key_failed: return "encblock-key-failed";
    case Errc::data_too_short: return "data-too-short";
    case Errc::incomplete_data: return "incomplete-data";
    case Errc::audit_failed: return "audit-failed";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

std::string_view errc_message(Errc code) noexcept {
  switch (code) {
    case Errc::unregistered_user:
    case Errc::unregistered_endpoint:
      return "Could not connect, come back later";
    case Errc::incomplete_data:
    case Errc::audit_failed:
      return "The data is incomplete.";
    case Errc::ez_key_failed:
    case Errc::encblock_key_failed:
      return "The key is wrong.";
    case Errc::no_channel:
      return "Channel does not exist.";
    case Errc::iv_signature_invalid:
    case Errc::proof_invalid:
      return "u not verify";
    default:
      return errc_name(code);
  }
}

}  // namespace heez
