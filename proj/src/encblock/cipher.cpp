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

#include "heez/encblock/cipher.hpp"

#include <algorithm>
#include <bit>

#include "heez/error.hpp"

namespace heez::encblock {

namespace {

constexpr std::array<std::uint8_t, 16> kSbox = {0xC, 0x5, 0x6, 0xB, 0x9, 0x0, 0xA, 0xD,
                                                 0x3, 0xE, 0xF, 0x8, 0x4, 0x7, 0x1, 0x2};

constexpr std::array<std::uint8_t, 16> invert(const std::array<std::uint8_t, 16>& s) {
  std::array<std::uint8_t, 16> out{};
  for (std::uint8_t i = 0; i < 16; ++i) out[s[i]] = i;
  return out;
}
constexpr std::array<std::uint8_t, 16> kInvSbox = invert(kSbox);

constexpr int kRounds = 4;

Word16 substitute(Word16 x, const std::array<std::uint8_t, 16>& box) {
  Word16 out = 0;
  for (int n = 0; n < 4; ++n) out |= static_cast<Word16>(box[(x >> (4 * n)) & 0xF] << (4 * n));
  return out;
}

// Bit i moves to 4i mod 15 (bit 15 fixed): a 4x4 transpose, self-inverse.
Word16 transpose(Word16 x) {
  Word16 out = 0;
  for (int i = 0; i < 16; ++i) {
    int to = (i == 15) ? 15 : (4 * i) % 15;
    out |= static_cast<Word16>(((x >> i) & 1U) << to);
  }
  return out;
}

Word16 round_key(Word16 key, int round) { return std::rotl(key, round); }

}  // namespace

SubKeys SubKeys::from_master(std::span<const std::uint8_t, 16> key) {
  SubKeys out;
  for (std::size_t i = 0; i < 8; ++i) {
    out.k[i] = static_cast<Word16>((key[2 * i] << 8) | key[2 * i + 1]);
  }
  return out;
}

Word16 b16_encrypt(Word16 block, Word16 key) {
  Word16 x = block;
  for (int r = 0; r < kRounds; ++r) {
    x = substitute(x, kSbox);
    if (r + 1 < kRounds) x = transpose(x);
    x ^= round_key(key, r);
  }
  return x;
}

Word16 b16_decrypt(Word16 block, Word16 key) {
  Word16 x = block;
  for (int r = kRounds - 1; r >= 0; --r) {
    x ^= round_key(key, r);
    if (r + 1 < kRounds) x = transpose(x);
    x = substitute(x, kInvSbox);
  }
  return x;
}

Word16 lfsr_step(Word16 lfsr) {
  Word16 bit = static_cast<Word16>((lfsr ^ (lfsr >> 2) ^ (lfsr >> 3) ^ (lfsr >> 5)) & 1U);
  return static_cast<Word16>((lfsr >> 1) | (bit << 15));
}

CipherState init(const std::array<Word16, 8>& nonces, const SubKeys& keys) {
  const auto& k = keys.k;
  std::array<Word16, 8> s = nonces;
  Word16 out = 0;
  for (int t = 0; t < 4; ++t) {
    Word16 v12 = b16_encrypt(static_cast<Word16>(s[0] ^ s[2] ^ s[4] ^ s[6]), k[0]);
    Word16 v23 = b16_encrypt(v12 ^ s[1], k[1]);
    Word16 v34 = b16_encrypt(v23 ^ s[2], k[2]);
    Word16 v45 = b16_encrypt(v34 ^ s[3], k[3]);
    Word16 v56 = b16_encrypt(v45 ^ s[4], k[4]);
    Word16 v67 = b16_encrypt(v56 ^ s[5], k[5]);
    Word16 v78 = b16_encrypt(v67 ^ s[6], k[6]);
    out = b16_encrypt(v78 ^ s[7], k[7]);
    s[0] ^= out;
    s[1] ^= v12;
    s[2] ^= v23;
    s[3] ^= v34;
    s[4] ^= v45;
    s[5] ^= v56;
    s[6] ^= v67;
    s[7] ^= v78;
  }
  CipherState st;
  st.state = s;
  st.lfsr = static_cast<Word16>(out | 0x0080);
  return st;
}

namespace {

// Feedback shared by both directions; every right-hand side reads the
// pre-step registers except state3, which reads the fresh state4.
CipherState advance(const CipherState& s, Word16 v12, Word16 v23, Word16 v34, Word16 v45,
                    Word16 v56, Word16 v67, Word16 v78) {
  const auto& st = s.state;
  CipherState n;
  n.lfsr = lfsr_step(s.lfsr);
  n.round_counter = s.round_counter + 1;
  n.state[1] = add16(add16(v12, v56), st[5]);
  n.state[3] = add16(add16(v12, v45), st[7]);
  n.state[2] = add16(add16(v23, n.state[3]), st[0]);
  n.state[4] = add16(v23, n.lfsr);
  n.state[5] = add16(add16(v12, v45), st[6]);
  n.state[6] = add16(v23, v67);
  n.state[7] = v45;
  n.state[0] = add16(add16(add16(v34, v23), v78), st[4]);
  return n;
}

}  // namespace

Step encrypt_word(const CipherState& s, const SubKeys& keys, Word16 pt) {
  const auto& k = keys.k;
  const auto& st = s.state;
  Word16 v12 = b16_encrypt(add16(pt, st[0]), k[0]);
  Word16 v23 = b16_encrypt(add16(v12, st[1]), k[1]);
  Word16 v34 = b16_encrypt(add16(v23, st[2]), k[2]);
  Word16 v45 = b16_encrypt(add16(v34, st[3]), k[3]);
  Word16 v56 = b16_encrypt(add16(v45, st[4]), k[4]);
  Word16 v67 = b16_encrypt(add16(v56, st[5]), k[5]);
  Word16 v78 = b16_encrypt(add16(v67, st[6]), k[6]);
  Word16 ct = b16_encrypt(add16(v78, st[7]), k[7]);
  return {ct, advance(s, v12, v23, v34, v45, v56, v67, v78)};
}

Step decrypt_word(const CipherState& s, const SubKeys& keys, Word16 ct) {
  const auto& k = keys.k;
  const auto& st = s.state;
  Word16 v78 = sub16(b16_decrypt(ct, k[7]), st[7]);
  Word16 v67 = sub16(b16_decrypt(v78, k[6]), st[6]);
  Word16 v56 = sub16(b16_decrypt(v67, k[5]), st[5]);
  Word16 v45 = sub16(b16_decrypt(v56, k[4]), st[4]);
  Word16 v34 = sub16(b16_decrypt(v45, k[3]), st[3]);
  Word16 v23 = sub16(b16_decrypt(v34, k[2]), st[2]);
  Word16 v12 = sub16(b16_decrypt(v23, k[1]), st[1]);
  Word16 pt = sub16(b16_decrypt(v12, k[0]), st[0]);
  return {pt, advance(s, v12, v23, v34, v45, v56, v67, v78)};
}

std::array<Word16, 8> nonces_from_iv(const Iv128& iv) {
  std::array<Word16, 8> out{};
  for (std::size_t i = 0; i < 8; ++i) {
    out[i] = static_cast<Word16>((iv[2 * i] << 8) | iv[2 * i + 1]);
  }
  return out;
}

StreamCipher::StreamCipher(const Key128& key, const Iv128& iv)
    : keys_(SubKeys::from_master(key)), state_(init(nonces_from_iv(iv), keys_)) {}

Word16 StreamCipher::encrypt(Word16 pt) {
  Step s = encrypt_word(state_, keys_, pt);
  state_ = s.next;
  return s.word;
}

Word16 StreamCipher::decrypt(Word16 ct) {
  Step s = decrypt_word(state_, keys_, ct);
  state_ = s.next;
  return s.word;
}

std::vector<Word16> encrypt_stream(const Key128& key, const Iv128& iv,
                                   std::span<const Word16> words) {
  StreamCipher c(key, iv);
  std::vector<Word16> out;
  out.reserve(words.size());
  for (Word16 w : words) out.push_back(c.encrypt(w));
  return out;
}

std::vector<Word16> decrypt_stream(const Key128& key, const Iv128& iv,
                                   std::span<const Word16> words) {
  StreamCipher c(key, iv);
  std::vector<Word16> out;
  out.reserve(words.size());
  for (Word16 w : words) out.push_back(c.decrypt(w));
  return out;
}

std::vector<Word16> words_from_bytes(ByteSpan bytes) {
  if (bytes.size() % 2 != 0) throw Error(Errc::padding_error, "bit length not a multiple of 16");
  std::vector<Word16> out(bytes.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<Word16>((bytes[2 * i] << 8) | bytes[2 * i + 1]);
  }
  return out;
}

Bytes bytes_from_words(std::span<const Word16> words) {
  Bytes out;
  out.reserve(words.size() * 2);
  for (Word16 w : words) {
    out.push_back(static_cast<std::uint8_t>(w >> 8));
    out.push_back(static_cast<std::uint8_t>(w));
  }
  return out;
}

namespace {
constexpr std::array<std::uint8_t, 4> kMagic = {'E', 'B', 'K', '1'};
}

Bytes seal_container(const Key128& key, const Iv128& iv, ByteSpan plaintext) {
  Bytes padded(plaintext.begin(), plaintext.end());
  std::uint16_t tail_bits = plaintext.empty() ? 0 : 16;
  if (padded.size() % 2 != 0) {
    padded.push_back(0);
    tail_bits = 8;
  }
  std::vector<Word16> ct = encrypt_stream(key, iv, words_from_bytes(padded));
  ByteWriter w;
  w.raw(kMagic);
  w.raw(iv);
  w.raw(bytes_from_words(ct));
  w.u16(tail_bits);
  return std::move(w).take();
}

Bytes open_container(const Key128& key, ByteSpan container) {
  constexpr std::size_t kFixed = kMagic.size() + 16 + 2;
  if (container.size() < kFixed || !std::equal(kMagic.begin(), kMagic.end(), container.begin())) {
    throw Error(Errc::invalid_encoding, "not an EBK1 container");
  }
  Iv128 iv{};
  std::copy_n(container.begin() + 4, 16, iv.begin());
  ByteSpan body = container.subspan(4 + 16, container.size() - kFixed);
  std::uint16_t tail_bits = static_cast<std::uint16_t>((container[container.size() - 2] << 8) |
                                                       container[container.size() - 1]);
  bool empty = body.empty();
  if ((empty && tail_bits != 0) || (!empty && tail_bits != 8 && tail_bits != 16)) {
    throw Error(Errc::padding_error, "inconsistent bit-length trailer");
  }
  Bytes pt = bytes_from_words(decrypt_stream(key, iv, words_from_bytes(body)));
  if (tail_bits == 8) {
    if (pt.back() != 0) throw Error(Errc::padding_error, "non-zero padding");
    pt.pop_back();
  }
  return pt;
}

}  // namespace heez::encblock
