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
#include <span>
#include <vector>

#include "heez/bytes.hpp"

namespace heez::encblock {

using Word16 = std::uint16_t;

/// Modular addition and subtraction in 2^16.
constexpr Word16 add16(Word16 a, Word16 b) { return static_cast<Word16>(a + b); }
constexpr Word16 sub16(Word16 a, Word16 b) { return static_cast<Word16>(a - b); }

/// k1..k8, the big-endian split of a 128-bit master key.
struct SubKeys {
  std::array<Word16, 8> k{};

  static SubKeys from_master(std::span<const std::uint8_t, 16> key);
  friend bool operator==(const SubKeys&, const SubKeys&) = default;
};

/// Nine registers: eight state words and the LFSR.
struct CipherState {
  std::array<Word16, 8> state{};
  Word16 lfsr = 0;
  std::uint64_t round_counter = 0;

  friend bool operator==(const CipherState&, const CipherState&) = default;
};

/// Keyed 16-bit permutation: four SPN rounds (4-bit S-box on each nibble,
/// bit transpose, round key = key rotated left by the round index); the
/// last round skips the transpose.
Word16 b16_encrypt(Word16 block, Word16 key);
Word16 b16_decrypt(Word16 block, Word16 key);

/// One clock of the Fibonacci LFSR with taps 16, 14, 13, 11.
Word16 lfsr_step(Word16 lfsr);

/// Four XOR-chained warm-up rounds over the nonces; the last round output
/// with bit 7 forced on seeds the LFSR.
CipherState init(const std::array<Word16, 8>& nonces, const SubKeys& keys);

struct Step {
  Word16 word;
  CipherState next;
};

Step encrypt_word(const CipherState& s, const SubKeys& keys, Word16 pt);
Step decrypt_word(const CipherState& s, const SubKeys& keys, Word16 ct);

using Key128 = std::array<std::uint8_t, 16>;
using Iv128 = std::array<std::uint8_t, 16>;

/// Nonces are the big-endian split of the IV.
std::array<Word16, 8> nonces_from_iv(const Iv128& iv);

std::vector<Word16> encrypt_stream(const Key128& key, const Iv128& iv,
                                   std::span<const Word16> words);
std::vector<Word16> decrypt_stream(const Key128& key, const Iv128& iv,
                                   std::span<const Word16> words);

/// Stateful wrapper for callers that process a stream incrementally.
class StreamCipher {
 public:
  StreamCipher(const Key128& key, const Iv128& iv);

  Word16 encrypt(Word16 pt);
  Word16 decrypt(Word16 ct);
  const CipherState& state() const { return state_; }

 private:
  SubKeys keys_;
  CipherState state_;
};

/// Byte container: "EBK1" || IV || big-endian ciphertext words || u16
/// count of meaningful bits in the final word (0 for an empty stream).
/// An odd trailing byte is zero-padded into a final half word.
Bytes seal_container(const Key128& key, const Iv128& iv, ByteSpan plaintext);
Bytes open_container(const Key128& key, ByteSpan container);

/// Big-endian packing; throws Error(padding_error) for odd byte counts.
std::vector<Word16> words_from_bytes(ByteSpan bytes);
Bytes bytes_from_words(std::span<const Word16> words);

}  // namespace heez::encblock
