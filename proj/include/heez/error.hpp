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

#include <stdexcept>
#include <string>
#include <string_view>

namespace heez {

enum class Errc {
  // algebra
  invalid_element,
  invalid_encoding,
  // encblock
  padding_error,
  // ez
  attribute_count_exceeds_bases,
  zero_scalar,
  validation_refused,
  iv_signature_invalid,
  proof_invalid,
  non_invertible_denominator,
  challenge_mismatch,
  pairing_check_failed,
  pok_failed,
  // hfaudit
  not_approved,
  empty_file,
  unregistered_user,
  hash_mismatch,
  challenge_too_large,
  missing_block,
  ledger_record_missing,
  insufficient_candidates,
  delivery_unreadable,
  signature_invalid,
  // ledger
  duplicate_channel,
  unknown_channel,
  non_participant,
  non_admin_tpa_write,
  malformed_claim,
  digest_mismatch,
  // caudit
  unregistered_endpoint,
  channel_closed,
  no_channel,
  ez_key_failed,
  encblock_key_failed,
  // pipeline
  data_too_short,
  incomplete_data,
  audit_failed,
  // cli / bench
  invalid_argument,
  io_error,
};

/// Stable kebab-case identifier, e.g. "ez-key-failed".
std::string_view errc_name(Errc code) noexcept;

/// User-facing message. Protocol failures map onto the fixed strings the
/// decryption and encryption flows print; other codes return their name.
std::string_view errc_message(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  explicit Error(Errc code)
      : std::runtime_error(std::string(errc_name(code))), code_(code) {}
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace heez
