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

#include "heez/algebra/group.hpp"

#include <algorithm>

#include "heez/error.hpp"

namespace heez::algebra {

namespace {

constexpr std::uint8_t kFlagIdentity = 0x00;
constexpr std::uint8_t kFlagEven = 0x02;
constexpr std::uint8_t kFlagOdd = 0x03;

Fp decode_fp(ByteSpan in) {
  Fp out;
  if (!Fp::from_bytes(in.first<32>(), out)) {
    throw Error(Errc::invalid_encoding, "field element out of range");
  }
  return out;
}

}  // namespace

Scalar Scalar::from_bytes(ByteSpan in) {
  if (in.size() != kEncodedSize) throw Error(Errc::invalid_encoding, "scalar length");
  Fr v;
  if (!Fr::from_bytes(in.first<32>(), v)) throw Error(Errc::invalid_encoding, "scalar >= q");
  return Scalar(v);
}

Scalar Scalar::from_bytes_reduce(ByteSpan in) {
  if (in.size() > kEncodedSize) throw Error(Errc::invalid_encoding, "scalar too wide");
  std::array<std::uint8_t, 32> buf{};
  std::copy(in.begin(), in.end(), buf.end() - static_cast<std::ptrdiff_t>(in.size()));
  return Scalar::from_u256(U256::from_bytes_be(buf));
}

std::array<std::uint8_t, Scalar::kEncodedSize> Scalar::to_bytes() const {
  std::array<std::uint8_t, kEncodedSize> out;
  v_.to_bytes(out);
  return out;
}

const G1& G1::generator() {
  static const G1 kGen(G1Point::from_affine(Fp::from_u64(1), Fp::from_u64(2)));
  return kGen;
}

std::array<std::uint8_t, G1::kEncodedSize> G1::to_bytes() const {
  std::array<std::uint8_t, kEncodedSize> out{};
  if (is_identity()) return out;
  Fp x, y;
  p_.to_affine(x, y);
  out[0] = y.is_odd() ? kFlagOdd : kFlagEven;
  x.to_bytes(std::span<std::uint8_t, 32>(out.data() + 1, 32));
  return out;
}

G1 G1::from_bytes(ByteSpan in) {
  if (in.size() != kEncodedSize) throw Error(Errc::invalid_encoding, "G1 length");
  std::uint8_t flag = in[0];
  if (flag == kFlagIdentity) {
    if (std::any_of(in.begin() + 1, in.end(), [](std::uint8_t b) { return b != 0; })) {
      throw Error(Errc::invalid_encoding, "non-canonical identity");
    }
    return identity();
  }
  if (flag != kFlagEven && flag != kFlagOdd) throw Error(Errc::invalid_encoding, "G1 flag");
  Fp x = decode_fp(in.subspan(1, 32));
  Fp rhs = x.square() * x + G1Curve::b();
  Fp y;
  if (!rhs.sqrt(y)) throw Error(Errc::invalid_element, "x not on curve");
  if (y.is_odd() != (flag == kFlagOdd)) y = -y;
  return G1(G1Point::from_affine(x, y));
}

const G2& G2::generator() {
  static const G2 kGen(G2Point::from_affine(
      Fp2{Fp::from_u256(U256::from_hex(
              "1800deef121f1e76426a00665e5c4479674322d4f75edadd46debd5cd992f6ed")),
          Fp::from_u256(U256::from_hex(
              "198e9393920d483a7260bfb731fb5d25f1aa493335a9e71297e485b7aef312c2"))},
      Fp2{Fp::from_u256(U256::from_hex(
              "12c85ea5db8c6deb4aab71808dcb408fe3d1e7690c43d37b4ce6cc0166fa7daa")),
          Fp::from_u256(U256::from_hex(
              "090689d0585ff075ec9e99ad690c3395bc4b313370b38ef355acdadcd122975b"))}));
  return kGen;
}

bool G2::is_valid() const {
  if (!p_.is_on_curve()) return false;
  return p_.mul(Fr::kModulus).is_identity();
}

std::array<std::uint8_t, G2::kEncodedSize> G2::to_bytes() const {
  std::array<std::uint8_t, kEncodedSize> out{};
  if (is_identity()) return out;
  Fp2 x, y;
  p_.to_affine(x, y);
  out[0] = y.is_odd() ? kFlagOdd : kFlagEven;
  x.c0.to_bytes(std::span<std::uint8_t, 32>(out.data() + 1, 32));
  x.c1.to_bytes(std::span<std::uint8_t, 32>(out.data() + 33, 32));
  return out;
}

G2 G2::from_bytes(ByteSpan in) {
  if (in.size() != kEncodedSize) throw Error(Errc::invalid_encoding, "G2 length");
  std::uint8_t flag = in[0];
  if (flag == kFlagIdentity) {
    if (std::any_of(in.begin() + 1, in.end(), [](std::uint8_t b) { return b != 0; })) {
      throw Error(Errc::invalid_encoding, "non-canonical identity");
    }
    return identity();
  }
  if (flag != kFlagEven && flag != kFlagOdd) throw Error(Errc::invalid_encoding, "G2 flag");
  Fp2 x{decode_fp(in.subspan(1, 32)), decode_fp(in.subspan(33, 32))};
  Fp2 rhs = x.square() * x + G2Curve::b();
  Fp2 y;
  if (!rhs.sqrt(y)) throw Error(Errc::invalid_element, "x not on twist");
  if (y.is_odd() != (flag == kFlagOdd)) y = -y;
  G2 out(G2Point::from_affine(x, y));
  if (!out.is_valid()) throw Error(Errc::invalid_element, "not in the order-q subgroup");
  return out;
}

}  // namespace heez::algebra
