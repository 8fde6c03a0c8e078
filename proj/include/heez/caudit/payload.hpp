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

#include "heez/bytes.hpp"
#include "heez/ez/ez.hpp"

namespace heez::caudit {

using KeyConfirmation = std::array<std::uint8_t, 8>;

/// Encrypted head word with its IV and key-confirmation tag.
struct EncBlockSegment {
  static constexpr std::size_t kEncodedSize = 2 + 16 + 8;

  std::uint16_t word = 0;
  std::array<std::uint8_t, 16> iv{};
  KeyConfirmation confirm{};

  Bytes to_bytes() const;
  static EncBlockSegment from_bytes(ByteSpan in);
};

/// Credential over the commitment hiding the tail word, plus the id of the
/// sealed opening held by M-Audit.
struct EzSegment {
  ez::Credential credential;
  std::uint64_t opening_ref = 0;

  Bytes to_bytes() const;
  static EzSegment from_bytes(ByteSpan in);
};

/// Reference to the middle bytes held by the CSPT.
struct HfSegment {
  static constexpr std::size_t kEncodedSize = 8 + 8;

  std::uint64_t ic_m = 0;
  std::uint64_t middle_len = 0;

  Bytes to_bytes() const;
  static HfSegment from_bytes(ByteSpan in);
};

/// Container: "HEEZ" || version || three u32-length-prefixed segments ||
/// u8 route count || u64 routes || u16 trailer. The trailer is the bit length
/// of the protected serialization (head + middle + tail) modulo 2^16.
struct SecuredPayload {
  static constexpr std::uint8_t kVersion = 1;

  Bytes encblock_segment;
  Bytes ez_segment;
  Bytes hf_segment;
  std::vector<std::uint64_t> routes;
  std::uint16_t trailer = 0;

  Bytes to_bytes() const;
  static SecuredPayload from_bytes(ByteSpan in);
};

std::uint16_t bit_length_trailer(std::size_t serialization_bytes);

Bytes encode_opening(const ez::Opening& o);
ez::Opening decode_opening(ByteSpan in);

}  // namespace heez::caudit
