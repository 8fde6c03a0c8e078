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
#include <string_view>

#include "heez/algebra/group.hpp"
#include "heez/bytes.hpp"

namespace heez::algebra {

using Digest256 = std::array<std::uint8_t, 32>;
using Digest512 = std::array<std::uint8_t, 64>;

Digest256 sha256(ByteSpan data);
Digest512 sha512(ByteSpan data);
Digest256 hmac_sha256(ByteSpan key, ByteSpan data);

/// Domain separation tag for hash_to_group.
inline constexpr std::string_view kHashToGroupDst = "HEEZ-H2G-v1";

/// H: {0,1}* -> G1 by try-and-increment over SHA-512(dst || ctr || data).
/// Deterministic and never the identity.
G1 hash_to_group(ByteSpan data);
G1 hash_to_group(std::string_view data);

/// h: G1 -> Z_q^*: SHA-256 of the compressed point, reduced mod q, 0 -> 1.
Scalar hash_to_scalar(const G1& point);

}  // namespace heez::algebra
