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

#include "heez/pipeline/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "heez/error.hpp"

namespace heez::pipeline {

namespace {

using algebra::Rng;
using algebra::Scalar;

const algebra::SystemParams& params() { return algebra::SystemParams::bn254(); }

constexpr std::string_view kCspt = "cspt";
constexpr std::string_view kAdmin = "admin";

Scalar nonzero_scalar(Rng& rng) {
  for (;;) {
    Scalar s = rng.random_scalar();
    if (!s.is_zero()) return s;
  }
}

Bytes read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  auto s = ss.str();
  return Bytes(s.begin(), s.end());
}

void write_file(const std::filesystem::path& p, ByteSpan data) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot write " + p.string());
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

// Closes every channel opened during a decrypt, on success or failure.
struct ChannelScope {
  caudit::MAudit& maudit;
  std::vector<std::uint64_t> ids;
  ~ChannelScope() {
    for (auto id : ids) maudit.close_channel(id);
  }
};

}  // namespace

PipelineConfig PipelineConfig::from_json(std::string_view text) {
  PipelineConfig cfg;
  cfg.caudit = caudit::CauditConfig::from_json(text);
  auto doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw Error(Errc::invalid_argument, "config: expected an object");
  if (!doc.contains("pipeline")) return cfg;
  const auto& p = doc["pipeline"];
  auto read = [&](const char* key, std::uint32_t& out, bool allow_zero) {
    if (!p.contains(key)) return;
    if (!p[key].is_number_unsigned() || (!allow_zero && p[key].get<std::uint64_t>() == 0) ||
        p[key].get<std::uint64_t>() > 0xFFFFFFFFu)
      throw Error(Errc::invalid_argument, std::string("config: pipeline.") + key);
    out = p[key].get<std::uint32_t>();
  };
  read("blocks", cfg.blocks, false);
  read("challenge", cfg.challenge, true);
  read("tpas", cfg.tpas, false);
  read("tpa_pool", cfg.tpa_pool, false);
  if (p.contains("parallel")) {
    if (!p["parallel"].is_boolean()) throw Error(Errc::invalid_argument, "config: pipeline.parallel");
    cfg.exec = p["parallel"].get<bool>() ? hfaudit::Exec::parallel : hfaudit::Exec::serial;
  }
  return cfg;
}

UserAccount UserAccount::derive(const std::string& id, std::uint64_t seed, const ez::CommitmentBases& bases) {
  Rng rng = Rng(seed).fork("user:" + id);
  UserAccount u{hfaudit::Participant::generate(id, rng), {}, {}, {}};
  u.ez_keys = ez::UserKeyPair::generate(bases, rng);
  u.audit_keys = hfaudit::setup(params(), rng);
  rng.fill(u.encblock_key);
  return u;
}

// ------------------------------------------------------------ serialization

Bytes HfSerialization::to_bytes() const {
  if (file.size() < 2) throw Error(Errc::data_too_short);
  ByteWriter w;
  w.raw(ByteSpan(file).first(2));
  w.u64(file.size());
  w.u32(n);
  w.u64(ic_m);
  w.u32(static_cast<std::uint32_t>(tags.size()));
  for (auto& t : tags) w.raw(t.to_bytes());
  w.raw(ByteSpan(file).subspan(2));
  return std::move(w).take();
}

HfSerialization HfSerialization::from_bytes(ByteSpan in) {
  if (in.size() < 2) throw Error(Errc::invalid_encoding, "serialization too short");
  ByteReader r(in.subspan(2));
  HfSerialization s;
  std::uint64_t size = r.u64();
  s.n = r.u32();
  s.ic_m = r.u64();
  std::uint32_t count = r.u32();
  if (count > r.remaining() / G1::kEncodedSize) throw Error(Errc::invalid_encoding, "tag count");
  s.tags.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) s.tags.push_back(G1::from_bytes(r.raw(G1::kEncodedSize)));
  if (size < 2 || r.remaining() != size - 2) throw Error(Errc::invalid_encoding, "file length");
  auto rest = r.raw(r.remaining());
  s.file.reserve(size);
  s.file.insert(s.file.end(), in.begin(), in.begin() + 2);
  s.file.insert(s.file.end(), rest.begin(), rest.end());
  return s;
}

Segments split_segments(ByteSpan s) {
  if (s.size() < Deployment::kMinInput) throw Error(Errc::data_too_short);
  Segments out;
  out.head = static_cast<std::uint16_t>(s[0] << 8 | s[1]);
  out.tail = static_cast<std::uint16_t>(s[s.size() - 2] << 8 | s[s.size() - 1]);
  out.middle.assign(s.begin() + 2, s.end() - 2);
  return out;
}

Bytes join_segments(const Segments& s) {
  Bytes out;
  out.reserve(s.middle.size() + 4);
  out.push_back(static_cast<std::uint8_t>(s.head >> 8));
  out.push_back(static_cast<std::uint8_t>(s.head));
  out.insert(out.end(), s.middle.begin(), s.middle.end());
  out.push_back(static_cast<std::uint8_t>(s.tail >> 8));
  out.push_back(static_cast<std::uint8_t>(s.tail));
  return out;
}

// --------------------------------------------------------------- deployment

Deployment::Deployment(std::uint64_t seed, PipelineConfig config)
    : seed_(seed),
      config_(config),
      infra_rng_(Rng(seed).fork("infra")),
      session_rng_(Rng(seed).fork("session:0")),
      maudit_rng_(Rng(seed).fork("maudit")),
      ledger_(std::make_unique<ledger::Ledger>(registry_, clock_, seed)),
      scheduler_(clock_, config.caudit),
      cspt_(hfaudit::Participant::generate(std::string(kCspt), infra_rng_)),
      iv_(algebra::EcdsaKeyPair::generate(infra_rng_)),
      cp_(ez::CpKeyPair::generate(infra_rng_)) {
  using ledger::Role;
  registry_.enroll(std::string(kAdmin), Role::admin, {}, true);
  hfaudit::register_participant(registry_, cspt_, Role::cspt, true);
  registry_.enroll("iv", Role::iv, {}, true);
  auto pk_cp = cp_.pk.to_bytes();
  registry_.enroll("cp", Role::cp, Bytes(pk_cp.begin(), pk_cp.end()), true);
  registry_.enroll("maudit", Role::sp, {}, true);

  std::vector<std::string> audit_members{std::string(kCspt), std::string(kAdmin)};
  for (std::size_t i = 0; i < config_.tpa_pool; ++i) {
    std::string id = "tpa" + std::to_string(i + 1);
    auto tpa = hfaudit::Participant::generate(id, infra_rng_);
    hfaudit::register_participant(registry_, tpa, Role::tpa, true);
    tpa_pool_.push_back({id, 5.0 + static_cast<double>(infra_rng_.uniform(4500)) / 100.0});
    audit_members.push_back(id);
  }
  ledger_->create_channel(std::string(ledger::kAuditChannel), audit_members, std::string(kCspt));
  ledger_->create_channel(std::string(ledger::kCredentialChannel), {"cp", "iv", "maudit", std::string(kAdmin)},
                          "cp");
  maudit_ = std::make_unique<caudit::MAudit>(registry_, bases_, cp_.pk, maudit_rng_);
  set_epoch(0);
}

void Deployment::set_epoch(std::uint64_t epoch) {
  epoch_ = epoch;
  session_rng_ = Rng(seed_).fork("session:" + std::to_string(epoch));
  maudit_rng_ = Rng(seed_).fork("maudit-session:" + std::to_string(epoch));
}

const UserAccount& Deployment::add_user(const std::string& id) {
  if (auto it = users_.find(id); it != users_.end()) return it->second;
  UserAccount u = UserAccount::derive(id, seed_, bases_);
  hfaudit::register_participant(registry_, u.participant, ledger::Role::user, true);
  ledger_->add_participant(ledger::kAuditChannel, id);
  ledger_->add_participant(ledger::kCredentialChannel, id);
  return users_.emplace(id, std::move(u)).first->second;
}

const UserAccount& Deployment::user(const std::string& id) const {
  auto it = users_.find(id);
  if (it == users_.end()) throw Error(Errc::unregistered_user, id);
  return it->second;
}

std::vector<std::string> Deployment::user_ids() const {
  std::vector<std::string> ids;
  for (auto& [id, _] : users_) ids.push_back(id);
  return ids;
}

hfaudit::CsptContext Deployment::cspt_ctx() {
  return {cspt_, registry_, *ledger_, std::string(ledger::kAuditChannel), config_.exec};
}

SecuredPayload Deployment::encrypt(ByteSpan data, const UserAccount& user) {
  if (!registry_.has_role(user.id(), ledger::Role::user)) throw Error(Errc::unregistered_user, user.id());
  if (data.size() < kMinInput) throw Error(Errc::data_too_short);
  Rng& rng = session_rng_;

  // HF layer: tags, delivery to the CSPT, anchoring on the audit channel.
  auto n = static_cast<std::uint32_t>(std::min<std::size_t>(config_.blocks, data.size()));
  auto blocks = hfaudit::split_file(data, n);
  G1 u_m = hfaudit::random_u(params(), rng);
  auto tags = hfaudit::gen_tags(blocks, user.audit_keys, u_m, config_.exec);
  auto delivery = hfaudit::make_delivery(user.participant, cspt_.box.pub, blocks, tags, user.audit_keys, params(), rng);
  auto stored = hfaudit::store(hfaudit::DeliveryMessage::from_bytes(delivery.to_bytes()), cspt_ctx(), rng);

  Bytes serialization = HfSerialization{Bytes(data.begin(), data.end()), n, stored.ic_m, tags.phi}.to_bytes();
  Segments seg = split_segments(serialization);

  // Head word under Enc-Block.
  caudit::EncBlockSegment ebk;
  rng.fill(ebk.iv);
  ebk.word = encblock::encrypt_stream(user.encblock_key, ebk.iv, std::vector<encblock::Word16>{seg.head})[0];
  ebk.confirm = caudit::encblock_confirmation(user.encblock_key, ebk.iv);

  // Tail word as the committed attribute of an EZ credential.
  std::vector<Scalar> attrs{Scalar::from_u64(seg.tail)};
  auto com = ez::commit(attrs, nonzero_scalar(rng), user.ez_keys.pk, bases_);
  auto sig = ez::iv_issue(com.C, {{seg.tail}, {}}, {}, iv_);
  auto proof = ez::prove_opening(com, user.ez_keys.pk, bases_, rng);
  auto cred = ez::cp_issue(com.C, sig, proof, cp_, user.ez_keys.pk, bases_);
  if (!ez::user_verify(cred.C, cred.sigma_cp, cred.pk_cp, user.ez_keys.pk))
    throw Error(Errc::pairing_check_failed, "issued credential");
  caudit::EzSegment ezs{cred, maudit_->deposit_opening(com.opening)};
  TxId cred_tx = ledger_->submit(ledger::kCredentialChannel, "cp", cred.to_bytes());

  cspt_store_[stored.ic_m] = {user.id(), n, Bytes(data.begin(), data.end()), tags.phi, u_m, seg.middle};
  clock_.advance();

  SecuredPayload out;
  out.encblock_segment = ebk.to_bytes();
  out.ez_segment = ezs.to_bytes();
  out.hf_segment = caudit::HfSegment{stored.ic_m, seg.middle.size()}.to_bytes();
  out.routes = {stored.ic_m, cred_tx};
  out.trailer = caudit::bit_length_trailer(serialization.size());
  return out;
}

Bytes Deployment::decrypt(const SecuredPayload& payload, const UserAccount& user) {
  Rng& rng = session_rng_;
  ChannelScope scope{*maudit_, {}};

  ++counters_.channel_open;
  scope.ids.push_back(maudit_->open_channel(user.id(), std::string(kCspt)));
  if (!maudit_->check_completeness(scope.ids.back(), payload)) throw Error(Errc::incomplete_data);
  auto ezs = caudit::EzSegment::from_bytes(payload.ez_segment);
  auto ebk = caudit::EncBlockSegment::from_bytes(payload.encblock_segment);
  auto hf = caudit::HfSegment::from_bytes(payload.hf_segment);

  ++counters_.ez_check;
  Scalar b = nonzero_scalar(rng);
  auto presentation = ez::blind(ezs.credential, user.ez_keys, bases_, b, rng);
  auto release = maudit_->verify_keys_and_release(
      scope.ids.back(), payload, presentation, [&](const G2& pk2) { return ez::user_respond(pk2, b); },
      caudit::encblock_confirmation(user.encblock_key, ebk.iv));
  if (release.opening.v.size() != 1) throw Error(Errc::ez_key_failed, "opening shape");
  auto tail_value = release.opening.v[0].to_u256();
  if (tail_value.limb[0] > 0xFFFF || tail_value.limb[1] || tail_value.limb[2] || tail_value.limb[3])
    throw Error(Errc::ez_key_failed, "tail word out of range");

  Segments seg;
  seg.tail = static_cast<std::uint16_t>(tail_value.limb[0]);
  ++counters_.head_decrypt;
  seg.head = encblock::decrypt_stream(user.encblock_key, ebk.iv, std::vector<encblock::Word16>{ebk.word})[0];

  // Middle segment from the CSPT, under the response deadline.
  ++counters_.concat;
  scheduler_.watch(std::string(kCspt));
  auto it = cspt_store_.find(hf.ic_m);
  if (it == cspt_store_.end()) {
    scheduler_.advance(scheduler_.config().timeout_ticks + 1);
    throw Error(Errc::incomplete_data, "CSPT did not answer");
  }
  scheduler_.respond(kCspt);
  scheduler_.advance(1);
  if (it->second.middle.size() != hf.middle_len) throw Error(Errc::incomplete_data, "middle length");
  seg.middle = it->second.middle;
  Bytes serialization = join_segments(seg);

  ++counters_.second_channel;
  scope.ids.push_back(maudit_->open_channel(user.id(), std::string(kCspt)));

  ++counters_.audit;
  HfSerialization parsed;
  std::optional<hfaudit::FileBlocks> blocks;
  try {
    parsed = HfSerialization::from_bytes(serialization);
    if (parsed.ic_m != hf.ic_m) throw Error(Errc::audit_failed, "record id");
    blocks = hfaudit::split_file(parsed.file, parsed.n);
  } catch (const Error& e) {
    throw Error(Errc::audit_failed, std::string(errc_name(e.code())));
  }
  if (!run_audit(*blocks, parsed.tags, hf.ic_m, config_.challenge, pick_tpas(config_.tpas), nullptr))
    throw Error(Errc::audit_failed);

  ++counters_.release;
  return std::move(parsed.file);
}

hfaudit::AuditAssignment Deployment::pick_tpas(std::uint32_t k) {
  auto a = hfaudit::select_tpas(tpa_pool_, hfaudit::SelectionMode::complete, k, session_rng_);
  a.S = kCspt;
  return a;
}

bool Deployment::run_audit(const hfaudit::FileBlocks& blocks, std::span<const G1> tags, TxId ic_m,
                           std::uint32_t M, hfaudit::AuditAssignment assignment, AuditOutcome* out) {
  AuditOutcome local;
  AuditOutcome& res = out ? *out : local;
  try {
    auto pub = hfaudit::load_audit_public(*ledger_, kAdmin, ic_m);
    std::uint32_t units = static_cast<std::uint32_t>(pub.hashes.size());
    if (blocks.n() != units) return false;
    std::uint32_t m = M == 0 ? units : std::min(M, units);
    res.assignment = std::move(assignment);
    res.challenge = hfaudit::gen_challenge(m, units, hfaudit::ChallengeSeeds::from_rng(session_rng_),
                                           res.assignment.selected, ic_m);
    res.proof = hfaudit::gen_proof(res.challenge, blocks, tags, config_.exec);
    hfaudit::run_verification(res.assignment, res.challenge, res.proof, pub, config_.exec);
  } catch (const Error&) {
    return false;
  }
  res.accepted = res.assignment.accepted();
  return res.accepted;
}

AuditOutcome Deployment::audit(TxId ic_m, std::uint32_t M, std::uint32_t tpas) {
  return audit(ic_m, M, pick_tpas(tpas));
}

AuditOutcome Deployment::audit(TxId ic_m, std::uint32_t M, hfaudit::AuditAssignment assignment) {
  auto it = cspt_store_.find(ic_m);
  if (it == cspt_store_.end()) throw Error(Errc::ledger_record_missing, std::to_string(ic_m));
  auto blocks = hfaudit::split_file(it->second.file, it->second.n);
  AuditOutcome out;
  run_audit(blocks, it->second.tags, ic_m, M, std::move(assignment), &out);
  return out;
}

// -------------------------------------------------------------- persistence

namespace {
constexpr std::array<std::uint8_t, 4> kStateMagic = {'H', 'Z', 'S', 'T'};
}

void Deployment::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  ByteWriter w;
  w.raw(kStateMagic);
  w.u64(seed_);
  w.u64(epoch_);
  w.u64(clock_.now());
  w.u32(static_cast<std::uint32_t>(users_.size()));
  for (auto& [id, _] : users_) w.blob(to_bytes_view(id));
  w.u32(static_cast<std::uint32_t>(cspt_store_.size()));
  for (auto& [ic_m, e] : cspt_store_) {
    w.u64(ic_m);
    w.blob(to_bytes_view(e.user_id));
    w.u32(e.n);
    w.blob(e.file);
    w.u32(static_cast<std::uint32_t>(e.tags.size()));
    for (auto& t : e.tags) w.raw(t.to_bytes());
    w.raw(e.u_m.to_bytes());
    w.blob(e.middle);
  }
  w.u32(static_cast<std::uint32_t>(maudit_->sealed().size()));
  for (auto& [ref, blob] : maudit_->sealed()) {
    w.u64(ref);
    w.blob(blob);
  }
  write_file(dir / "state.bin", w.bytes());
  write_file(dir / "ledger.log", to_bytes_view(ledger_->export_log()));
}

std::unique_ptr<Deployment> Deployment::load(const std::filesystem::path& dir, std::uint64_t seed,
                                             PipelineConfig config) {
  Bytes state = read_file(dir / "state.bin");
  ByteReader r(state);
  auto magic = r.raw(4);
  if (!std::equal(magic.begin(), magic.end(), kStateMagic.begin())) throw Error(Errc::invalid_encoding, "state magic");
  if (r.u64() != seed) throw Error(Errc::invalid_argument, "state was created with a different seed");
  std::uint64_t epoch = r.u64();
  std::uint64_t now = r.u64();
  auto d = std::make_unique<Deployment>(seed, config);
  for (std::uint32_t i = r.u32(); i > 0; --i) {
    auto id = r.blob();
    d->add_user(std::string(id.begin(), id.end()));
  }
  for (std::uint32_t i = r.u32(); i > 0; --i) {
    TxId ic_m = r.u64();
    CsptEntry e;
    auto uid = r.blob();
    e.user_id.assign(uid.begin(), uid.end());
    e.n = r.u32();
    e.file = r.blob();
    std::uint32_t count = r.u32();
    if (count > r.remaining() / G1::kEncodedSize) throw Error(Errc::invalid_encoding, "state tag count");
    for (std::uint32_t k = 0; k < count; ++k) e.tags.push_back(G1::from_bytes(r.raw(G1::kEncodedSize)));
    e.u_m = G1::from_bytes(r.raw(G1::kEncodedSize));
    e.middle = r.blob();
    d->cspt_store_[ic_m] = std::move(e);
  }
  for (std::uint32_t i = r.u32(); i > 0; --i) {
    std::uint64_t ref = r.u64();
    d->maudit_->restore_sealed(ref, r.blob());
  }
  r.expect_done();
  Bytes log = read_file(dir / "ledger.log");
  d->ledger_->import_log(std::string_view(reinterpret_cast<const char*>(log.data()), log.size()));
  d->clock_.advance_to(now);
  d->set_epoch(epoch + 1);
  return d;
}

}  // namespace heez::pipeline
