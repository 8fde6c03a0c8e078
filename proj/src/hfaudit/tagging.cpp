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

#include <algorithm>

#include "heez/error.hpp"
#include "heez/hfaudit/hfaudit.hpp"

namespace heez::hfaudit {

Bytes ParticipantKeys::to_bytes() const {
  ByteWriter w;
  w.raw(signing.sec1);
  w.raw(box.to_bytes());
  return std::move(w).take();
}

ParticipantKeys ParticipantKeys::from_bytes(ByteSpan in) {
  if (in.size() != kEncodedSize) throw Error(Errc::invalid_encoding, "participant keys length");
  ParticipantKeys k;
  std::copy_n(in.begin(), 65, k.signing.sec1.begin());
  k.box = G1::from_bytes(in.subspan(65));
  return k;
}

Participant Participant::generate(std::string id, Rng& rng) {
  Rng sub = rng.fork("participant:" + id);
  return {std::move(id), algebra::EcdsaKeyPair::generate(sub), algebra::BoxKeyPair::generate(sub)};
}

ledger::IdentityRecord register_participant(ledger::Registry& ca, const Participant& who,
                                            ledger::Role role, bool approved) {
  return ca.enroll(who.id, role, who.keys().to_bytes(), approved);
}

ParticipantKeys published_keys(const ledger::Registry& ca, std::string_view id) {
  auto rec = ca.lookup(id);
  if (!rec) throw Error(Errc::unregistered_user, std::string(id));
  return ParticipantKeys::from_bytes(rec->public_keys);
}

AuditKeyPair setup(const SystemParams& params, Rng& rng) {
  Scalar x = rng.random_scalar();
  return {x, x * params.g};
}

Bytes FileBlocks::join() const {
  Bytes out;
  out.reserve(file_size);
  for (auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

Scalar block_value(ByteSpan block) {
  if (block.size() > kMaxBlockBytes) throw Error(Errc::invalid_argument, "block wider than 30 bytes");
  return Scalar::from_bytes_reduce(block);
}

FileBlocks split_file(ByteSpan file, std::uint32_t n) {
  if (file.empty()) throw Error(Errc::empty_file);
  if (n == 0 || n > file.size()) throw Error(Errc::invalid_argument, "block count out of range");
  FileBlocks fb;
  fb.file_size = file.size();
  fb.logical_blocks = n;
  const std::size_t base = file.size() / n;
  const std::size_t extra = file.size() % n;
  std::size_t at = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    std::size_t size = base + (i < extra ? 1 : 0);
    for (std::size_t off = 0; off < size; off += kMaxBlockBytes) {
      std::size_t len = std::min(kMaxBlockBytes, size - off);
      ByteSpan unit = file.subspan(at + off, len);
      fb.blocks.emplace_back(unit.begin(), unit.end());
      fb.values.push_back(block_value(unit));
      fb.parent.push_back(i);
    }
    at += size;
  }
  return fb;
}

G1 random_u(const SystemParams& params, Rng& rng) { return rng.random_scalar() * params.P; }

BlockTagSet gen_tags(const FileBlocks& blocks, const AuditKeyPair& keys, const G1& u_m, Exec exec) {
  auto hashes = hash_blocks(blocks.blocks, exec);
  return {tag_blocks(hashes, blocks.values, keys.x, u_m, exec), u_m};
}

}  // namespace heez::hfaudit
