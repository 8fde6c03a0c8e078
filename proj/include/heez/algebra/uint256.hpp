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
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace heez::algebra {

using u128 = unsigned __int128;

/// Fixed-width 256-bit unsigned integer, little-endian 64-bit limbs.
struct U256 {
  std::array<std::uint64_t, 4> limb{};

  constexpr bool is_zero() const {
    return (limb[0] | limb[1] | limb[2] | limb[3]) == 0;
  }
  constexpr bool bit(std::size_t i) const {
    return (limb[i / 64] >> (i % 64)) & 1U;
  }
  constexpr std::size_t bit_length() const {
    for (int i = 3; i >= 0; --i) {
      if (limb[i] != 0) {
        std::size_t n = 64;
        while (((limb[i] >> (n - 1)) & 1U) == 0) --n;
        return static_cast<std::size_t>(i) * 64 + n;
      }
    }
    return 0;
  }

  friend constexpr bool operator==(const U256&, const U256&) = default;
  friend constexpr std::strong_ordering operator<=>(const U256& a, const U256& b) {
    for (int i = 3; i >= 0; --i) {
      if (a.limb[i] != b.limb[i]) return a.limb[i] <=> b.limb[i];
    }
    return std::strong_ordering::equal;
  }

  static constexpr U256 from_u64(std::uint64_t v) { return U256{{v, 0, 0, 0}}; }

  /// Parses an unprefixed or 0x-prefixed hexadecimal literal (at most 64 digits).
  static constexpr U256 from_hex(std::string_view hex) {
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) {
      hex.remove_prefix(2);
    }
    U256 out;
    std::size_t bit_pos = 0;
    for (std::size_t i = hex.size(); i-- > 0;) {
      char c = hex[i];
      std::uint64_t d = (c >= '0' && c <= '9')   ? static_cast<std::uint64_t>(c - '0')
                        : (c >= 'a' && c <= 'f') ? static_cast<std::uint64_t>(c - 'a' + 10)
                                                 : static_cast<std::uint64_t>(c - 'A' + 10);
      out.limb[bit_pos / 64] |= d << (bit_pos % 64);
      bit_pos += 4;
    }
    return out;
  }

  void to_bytes_be(std::span<std::uint8_t, 32> out) const {
    for (std::size_t i = 0; i < 32; ++i) {
      out[31 - i] = static_cast<std::uint8_t>(limb[i / 8] >> (8 * (i % 8)));
    }
  }
  static U256 from_bytes_be(std::span<const std::uint8_t, 32> in) {
    U256 out;
    for (std::size_t i = 0; i < 32; ++i) {
      out.limb[i / 8] |= static_cast<std::uint64_t>(in[31 - i]) << (8 * (i % 8));
    }
    return out;
  }
};

/// a + b, returning the carry out.
constexpr std::uint64_t add_with_carry(U256& out, const U256& a, const U256& b) {
  u128 carry = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    u128 s = static_cast<u128>(a.limb[i]) + b.limb[i] + carry;
    out.limb[i] = static_cast<std::uint64_t>(s);
    carry = s >> 64;
  }
  return static_cast<std::uint64_t>(carry);
}

/// a - b, returning the borrow out.
constexpr std::uint64_t sub_with_borrow(U256& out, const U256& a, const U256& b) {
  std::uint64_t borrow = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    u128 d = static_cast<u128>(a.limb[i]) - b.limb[i] - borrow;
    out.limb[i] = static_cast<std::uint64_t>(d);
    borrow = static_cast<std::uint64_t>(d >> 64) & 1U;
  }
  return borrow;
}

constexpr U256 shr1(const U256& a) {
  U256 out;
  for (std::size_t i = 0; i < 4; ++i) {
    out.limb[i] = a.limb[i] >> 1;
    if (i < 3) out.limb[i] |= a.limb[i + 1] << 63;
  }
  return out;
}

}  // namespace heez::algebra
