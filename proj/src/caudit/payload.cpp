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

#include "heez/caudit/payload.hpp"

#include <algorithm>

#include "heez/error.hpp"

namespace heez::caudit {

namespace {
constexpr std::array<std::uint8_t, 4> kMagic = {'H', 'E', 'E', 'Z'};
}

Bytes EncBlockSegment::to_bytes() const {
  ByteWriter w;
  w.u16(word);
  w.raw(iv);
  w.raw(confirm);
  return std::move(w).take();
}

EncBlockSegment EncBlockSegment::from_bytes(ByteSpan in) {
  ByteReader r(in);
  EncBlockSegment s;
  s.word = r.u16();
  auto iv = r.raw(16);
  std::copy(iv.begin(), iv.end(), s.iv.begin());
  auto c = r.raw(8);
  std::copy(c.begin(), c.end(), s.confirm.begin());
  r.expect_done();
  return s;
}

Bytes EzSegment::to_bytes() const {
  ByteWriter w;
  w.u64(opening_ref);
  w.raw(credential.to_bytes());
  return std::move(w).take();
}

EzSegment EzSegment::from_bytes(ByteSpan in) {
  ByteReader r(in);
  EzSegment s;
  s.opening_ref = r.u64();
  s.credential = ez::Credential::from_bytes(r.raw(r.remaining()));
  return s;
}

Bytes HfSegment::to_bytes() const {
  ByteWriter w;
  w.u64(ic_m);
  w.u64(middle_len);
  return std::move(w).take();
}

HfSegment HfSegment::from_bytes(ByteSpan in) {
  ByteReader r(in);
  HfSegment s;
  s.ic_m = r.u64();
  s.middle_len = r.u64();
  r.expect_done();
  return s;
}

Bytes SecuredPayload::to_bytes() const {
  if (routes.size() > 255) throw Error(Errc::invalid_argument, "too many routes");
  ByteWriter w;
  w.raw(kMagic);
  w.u8(kVersion);
  w.blob(encblock_segment);
  w.blob(ez_segment);
  w.blob(hf_segment);
  w.u8(static_cast<std::uint8_t>(routes.size()));
  for (auto id : routes) w.u64(id);
  w.u16(trailer);
  return std::move(w).take();
}

SecuredPayload SecuredPayload::from_bytes(ByteSpan in) {
  ByteReader r(in);
  auto magic = r.raw(4);
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) throw Error(Errc::invalid_encoding, "container magic");
  if (r.u8() != kVersion) throw Error(Errc::invalid_encoding, "container version");
  SecuredPayload p;
  p.encblock_segment = r.blob();
  p.ez_segment = r.blob();
  p.hf_segment = r.blob();
  std::uint8_t n = r.u8();
  for (std::uint8_t i = 0; i < n; ++i) p.routes.push_back(r.u64());
  p.trailer = r.u16();
  r.expect_done();
  return p;
}

std::uint16_t bit_length_trailer(std::size_t serialization_bytes) {
  return static_cast<std::uint16_t>((static_cast<std::uint64_t>(serialization_bytes) * 8) & 0xFFFF);
}

Bytes encode_opening(const ez::Opening& o) {
  ByteWriter w;
  w.raw(o.r.to_bytes());
  w.u32(static_cast<std::uint32_t>(o.v.size()));
  for (auto& v : o.v) w.raw(v.to_bytes());
  return std::move(w).take();
}

ez::Opening decode_opening(ByteSpan in) {
  ByteReader r(in);
  ez::Opening o;
  o.r = ez::Scalar::from_bytes(r.raw(32));
  std::uint32_t n = r.u32();
  if (n > r.remaining() / 32) throw Error(Errc::invalid_encoding, "opening count");
  for (std::uint32_t i = 0; i < n; ++i) o.v.push_back(ez::Scalar::from_bytes(r.raw(32)));
  r.expect_done();
  return o;
}

}  // namespace heez::caudit
