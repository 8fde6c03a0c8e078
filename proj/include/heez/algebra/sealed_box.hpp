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
#include <optional>

#include "heez/algebra/group.hpp"
#include "heez/algebra/rng.hpp"
#include "heez/bytes.hpp"

namespace heez::algebra {

/// Hybrid public-key encryption over G1: ephemeral Diffie-Hellman with the
/// recipient's key, SHA-256 key derivation, AES-256-GCM.
/// Layout: ephemeral point (33) || nonce (12) || ciphertext || tag (16).
struct BoxKeyPair {
  Scalar secret;
  G1 pub;

  static BoxKeyPair generate(Rng& rng);
};

using AeadKey = std::array<std::uint8_t, 32>;
using AeadNonce = std::array<std::uint8_t, 12>;

/// AES-256-GCM; output is ciphertext || tag (16).
Bytes aead_seal(const AeadKey& key, const AeadNonce& nonce, ByteSpan plaintext);
std::optional<Bytes> aead_open(const AeadKey& key, const AeadNonce& nonce, ByteSpan sealed);

Bytes seal(const G1& recipient, ByteSpan plaintext, Rng& rng);
std::optional<Bytes> open_sealed(const Scalar& secret, ByteSpan sealed);

inline constexpr std::size_t kSealOverhead = G1::kEncodedSize + 12 + 16;

}  // namespace heez::algebra
