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

#include "heez/algebra/rng.hpp"

#include <openssl/rand.h>

#include <algorithm>

#include "heez/algebra/hash.hpp"
#include "heez/error.hpp"

namespace heez::algebra {

Rng::Rng(std::uint64_t seed) {
  ByteWriter w;
  w.raw(to_bytes("HEEZ-RNG-v1"));
  w.u64(seed);
  key_ = sha256(w.bytes());
}

Rng Rng::from_system() {
  Rng r;
  if (RAND_bytes(r.key_.data(), static_cast<int>(r.key_.size())) != 1) {
    throw Error(Errc::io_error, "system entropy unavailable");
  }
  return r;
}

void Rng::refill() {
  ByteWriter w;
  w.raw(key_);
  w.u64(counter_++);
  block_ = sha256(w.bytes());
  used_ = 0;
}

void Rng::fill(std::span<std::uint8_t> out) {
  std::size_t pos = 0;
  while (pos < out.size()) {
    if (used_ == block_.size()) refill();
    std::size_t n = std::min(out.size() - pos, block_.size() - used_);
    std::copy_n(block_.begin() + static_cast<std::ptrdiff_t>(used_), n,
                out.begin() + static_cast<std::ptrdiff_t>(pos));
    used_ += n;
    pos += n;
  }
}

std::uint64_t Rng::next_u64() {
  std::array<std::uint8_t, 8> b{};
  fill(b);
  std::uint64_t v = 0;
  for (auto x : b) v = (v << 8) | x;
  return v;
}

std::uint64_t Rng::uniform(std::uint64_t bound) {
  if (bound == 0) throw Error(Errc::invalid_argument, "uniform bound is zero");
  std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  for (;;) {
    std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

Scalar Rng::random_scalar() {
  const U256& q = Fr::kModulus;
  const std::size_t top_bits = q.bit_length() - 192;
  const std::uint64_t mask = (std::uint64_t{1} << top_bits) - 1;
  for (;;) {
    std::array<std::uint8_t, 32> b{};
    fill(b);
    U256 v = U256::from_bytes_be(b);
    v.limb[3] &= mask;
    if (v.is_zero() || v >= q) continue;
    return Scalar::from_u256(v);
  }
}

Rng Rng::fork(std::string_view label) {
  Rng child;
  std::array<std::uint8_t, 32> seed{};
  fill(seed);
  ByteWriter w;
  w.raw(seed);
  w.raw(to_bytes(label));
  child.key_ = sha256(w.bytes());
  return child;
}

}  // namespace heez::algebra
