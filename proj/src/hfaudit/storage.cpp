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

#include "heez/error.hpp"
#include "heez/hfaudit/hfaudit.hpp"

namespace heez::hfaudit {

namespace {

void write_g1s(ByteWriter& w, std::span<const G1> pts) {
  w.u32(static_cast<std::uint32_t>(pts.size()));
  for (auto& p : pts) w.raw(p.to_bytes());
}

std::vector<G1> read_g1s(ByteReader& r) {
  std::uint32_t count = r.u32();
  if (count > r.remaining() / G1::kEncodedSize) throw Error(Errc::invalid_encoding, "point count");
  std::vector<G1> out;
  out.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) out.push_back(G1::from_bytes(r.raw(G1::kEncodedSize)));
  return out;
}

std::string read_string(ByteReader& r) {
  Bytes b = r.blob();
  return {b.begin(), b.end()};
}

}  // namespace

Bytes DeliveryMessage::to_bytes() const {
  ByteWriter w;
  write_g1s(w, tags);
  w.blob(file);
  w.u32(n);
  w.raw(g.to_bytes());
  w.raw(y.to_bytes());
  w.blob(to_bytes_view(params_id));
  w.blob(sealed_id_u);
  w.blob(signature);
  return std::move(w).take();
}

DeliveryMessage DeliveryMessage::from_bytes(ByteSpan in) {
  ByteReader r(in);
  DeliveryMessage m;
  m.tags = read_g1s(r);
  m.file = r.blob();
  m.n = r.u32();
  m.g = G2::from_bytes(r.raw(G2::kEncodedSize));
  m.y = G2::from_bytes(r.raw(G2::kEncodedSize));
  m.params_id = read_string(r);
  m.sealed_id_u = r.blob();
  m.signature = r.blob();
  r.expect_done();
  return m;
}

Bytes signed_g_u(const G2& g, const G1& u_m) {
  ByteWriter w;
  w.raw(g.to_bytes());
  w.raw(u_m.to_bytes());
  return std::move(w).take();
}

DeliveryMessage make_delivery(const Participant& user, const G1& cspt_box, const FileBlocks& blocks,
                              const BlockTagSet& tags, const AuditKeyPair& keys,
                              const SystemParams& params, Rng& rng) {
  DeliveryMessage m;
  m.tags = tags.phi;
  m.file = blocks.join();
  m.n = blocks.logical_blocks;
  m.g = params.g;
  m.y = keys.y;
  ByteWriter inner;
  inner.blob(to_bytes_view(user.id));
  inner.raw(tags.u_m.to_bytes());
  m.sealed_id_u = algebra::seal(cspt_box, inner.bytes(), rng);
  m.signature = user.signer.sign(signed_g_u(params.g, tags.u_m));
  return m;
}

Bytes AuditPublic::to_bytes() const {
  ByteWriter w;
  write_g1s(w, hashes);
  w.u32(n);
  w.raw(g.to_bytes());
  w.raw(y.to_bytes());
  w.blob(to_bytes_view(params_id));
  w.raw(u_m.to_bytes());
  w.blob(sealed_c_mpk);
  return std::move(w).take();
}

AuditPublic AuditPublic::from_bytes(ByteSpan in) {
  ByteReader r(in);
  AuditPublic p;
  p.hashes = read_g1s(r);
  p.n = r.u32();
  p.g = G2::from_bytes(r.raw(G2::kEncodedSize));
  p.y = G2::from_bytes(r.raw(G2::kEncodedSize));
  p.params_id = read_string(r);
  p.u_m = G1::from_bytes(r.raw(G1::kEncodedSize));
  p.sealed_c_mpk = r.blob();
  r.expect_done();
  return p;
}

StoreResult store(const DeliveryMessage& delivery, const CsptContext& ctx, Rng& rng) {
  auto inner = algebra::open_sealed(ctx.cspt.box.secret, delivery.sealed_id_u);
  if (!inner) throw Error(Errc::delivery_unreadable);
  std::string user_id;
  G1 u_m;
  try {
    ByteReader r(*inner);
    user_id = read_string(r);
    u_m = G1::from_bytes(r.raw(G1::kEncodedSize));
    r.expect_done();
  } catch (const Error&) {
    throw Error(Errc::delivery_unreadable);
  }

  if (!ctx.registry.is_registered(user_id)) throw Error(Errc::unregistered_user, user_id);
  ParticipantKeys user_keys = published_keys(ctx.registry, user_id);
  if (!algebra::ecdsa_verify(user_keys.signing, signed_g_u(delivery.g, u_m), delivery.signature))
    throw Error(Errc::signature_invalid, user_id);
  if (delivery.params_id != kParamsId || !(delivery.g == G2::generator()))
    throw Error(Errc::invalid_argument, "unsupported parameter set");

  FileBlocks blocks = split_file(delivery.file, delivery.n);
  if (delivery.tags.size() != blocks.n())
    throw Error(Errc::hash_mismatch, "tag count " + std::to_string(delivery.tags.size()));
  auto hashes = hash_blocks(blocks.blocks, ctx.exec);

  std::vector<Scalar> rho(blocks.n());
  for (auto& r : rho) r = Scalar::from_u64(rng.next_u64() | 1U);
  if (!batch_check_tags(hashes, blocks.values, delivery.tags, u_m, delivery.y, rho, ctx.exec)) {
    auto bad = find_bad_tag(hashes, blocks.values, delivery.tags, u_m, delivery.y, ctx.exec);
    throw Error(Errc::hash_mismatch, "unit " + std::to_string(bad.value_or(0)));
  }

  auto c = algebra::BoxKeyPair::generate(rng);
  AuditPublic pub;
  pub.hashes = std::move(hashes);
  pub.n = delivery.n;
  pub.g = delivery.g;
  pub.y = delivery.y;
  pub.u_m = u_m;
  pub.sealed_c_mpk = algebra::seal(user_keys.box, c.pub.to_bytes(), rng);
  TxId ic_m = ctx.ledger.submit(ctx.channel, ctx.cspt.id, pub.to_bytes());

  StoreResult out;
  out.ic_m = ic_m;
  out.record = {user_id, delivery.file, delivery.n, delivery.tags, u_m, c.pub, c.secret, ic_m};
  return out;
}

AuditPublic load_audit_public(const ledger::Ledger& ledger, std::string_view caller, TxId ic_m,
                              std::string_view channel) {
  auto tx = ledger.find(channel, caller, ic_m);
  if (!tx) throw Error(Errc::ledger_record_missing, std::to_string(ic_m));
  try {
    return AuditPublic::from_bytes(tx->payload);
  } catch (const Error&) {
    throw Error(Errc::ledger_record_missing, "record " + std::to_string(ic_m) + " is not an audit entry");
  }
}

}  // namespace heez::hfaudit
