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

#include "heez/algebra/hash.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include "heez/error.hpp"

namespace heez::algebra {

namespace {

template <std::size_t N>
std::array<std::uint8_t, N> evp_digest(const EVP_MD* md, ByteSpan data) {
  std::array<std::uint8_t, N> out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, md, nullptr) != 1 || len != N) {
    throw Error(Errc::invalid_argument, "digest failure");
  }
  return out;
}

}  // namespace

Digest256 sha256(ByteSpan data) { return evp_digest<32>(EVP_sha256(), data); }
Digest512 sha512(ByteSpan data) { return evp_digest<64>(EVP_sha512(), data); }

Digest256 hmac_sha256(ByteSpan key, ByteSpan data) {
  Digest256 out{};
  unsigned int len = 0;
  if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(),
           out.data(), &len) == nullptr) {
    throw Error(Errc::invalid_argument, "hmac failure");
  }
  return out;
}

G1 hash_to_group(ByteSpan data) {
  Bytes buf;
  buf.reserve(kHashToGroupDst.size() + 4 + data.size());
  buf.insert(buf.end(), kHashToGroupDst.begin(), kHashToGroupDst.end());
  buf.resize(buf.size() + 4);
  buf.insert(buf.end(), data.begin(), data.end());
  const std::size_t ctr_at = kHashToGroupDst.size();
  for (std::uint32_t ctr = 0;; ++ctr) {
    for (int i = 0; i < 4; ++i) buf[ctr_at + i] = static_cast<std::uint8_t>(ctr >> (24 - 8 * i));
    Digest512 d = sha512(buf);
    Fp x = Fp::from_wide_bytes_be(d);
    Fp y;
    if (!(x.square() * x + G1Curve::b()).sqrt(y)) continue;
    // Parity of y comes from a digest bit not consumed by the reduction bias.
    bool want_odd = (d[0] & 0x80) != 0;
    if (y.is_odd() != want_odd) y = -y;
    return G1(G1Point::from_affine(x, y));
  }
}

G1 hash_to_group(std::string_view data) {
  return hash_to_group(ByteSpan(reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

Scalar hash_to_scalar(const G1& point) {
  auto enc = point.to_bytes();
  Digest256 d = sha256(enc);
  Scalar s = Scalar::from_u256(U256::from_bytes_be(d));
  return s.is_zero() ? Scalar::one() : s;
}

}  // namespace heez::algebra
