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

#include "heez/algebra/rng.hpp"
#include "heez/bytes.hpp"

namespace heez::algebra {

/// SEC1 uncompressed P-256 point (0x04 || X || Y).
struct EcdsaPublicKey {
  std::array<std::uint8_t, 65> sec1{};
  friend bool operator==(const EcdsaPublicKey&, const EcdsaPublicKey&) = default;
};

/// ECDSA over NIST P-256 with SHA-256 and RFC 6979 deterministic nonces.
/// Signatures are DER-encoded.
class EcdsaKeyPair {
 public:
  static EcdsaKeyPair generate(Rng& rng);
  /// 32-byte big-endian private scalar in [1, n).
  static EcdsaKeyPair from_private(ByteSpan d);

  const EcdsaPublicKey& public_key() const { return pub_; }
  const std::array<std::uint8_t, 32>& private_bytes() const { return d_; }

  Bytes sign(ByteSpan message) const;

 private:
  std::array<std::uint8_t, 32> d_{};
  EcdsaPublicKey pub_;
};

bool ecdsa_verify(const EcdsaPublicKey& pub, ByteSpan message, ByteSpan der_signature);

}  // namespace heez::algebra
