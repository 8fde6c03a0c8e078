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

#include <gtest/gtest.h>

#include <set>

#include "heez/algebra/hash.hpp"
#include "heez/algebra/msm.hpp"
#include "heez/error.hpp"
#include "heez/hfaudit/hfaudit.hpp"

namespace heez::hfaudit {
namespace {

using algebra::pairing;

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::invalid_argument;
}

const SystemParams& P() { return SystemParams::bn254(); }

Scalar label_scalar(std::string_view label) {
  return Scalar::from_bytes_reduce(algebra::sha256(to_bytes_view(label)));
}

Bytes pattern(std::size_t len, unsigned mul, unsigned add) {
  Bytes out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = static_cast<std::uint8_t>((i * mul + add) % 256);
  return out;
}

Bytes random_bytes(Rng& rng, std::size_t len) {
  Bytes out(len);
  rng.fill(out);
  return out;
}

std::string hex(const G1& p) { return to_hex(p.to_bytes()); }

// Fixed key material shared with the offline oracle.
AuditKeyPair oracle_keys() {
  Scalar x = label_scalar("hf-x");
  return {x, x * P().g};
}
G1 oracle_u() { return label_scalar("hf-u") * P().P; }

bool tag_identity(const Bytes& block, const G1& tag, const G1& u, const G2& y) {
  return pairing(tag, P().g) == pairing(algebra::hash_to_group(ByteSpan(block)) + block_value(block) * u, y);
}

TEST(Register, ApprovedIsVisibleAndIdempotent) {
  Rng rng(1);
  ledger::Registry ca;
  auto alice = Participant::generate("alice", rng);
  auto a = register_participant(ca, alice, ledger::Role::user, true);
  auto b = register_participant(ca, alice, ledger::Role::user, true);
  EXPECT_EQ(a, b);
  EXPECT_EQ(published_keys(ca, "alice").box, alice.box.pub);
  EXPECT_EQ(published_keys(ca, "alice").signing, alice.signer.public_key());
  auto eve = Participant::generate("eve", rng);
  EXPECT_EQ(code_of([&] { register_participant(ca, eve, ledger::Role::user, false); }), Errc::not_approved);
  EXPECT_EQ(code_of([&] { published_keys(ca, "eve"); }), Errc::unregistered_user);
}

TEST(Setup, PublicKeyMatchesSecret) {
  Rng rng(2);
  auto k1 = setup(P(), rng);
  auto k2 = setup(P(), rng);
  EXPECT_FALSE(k1.x.is_zero());
  EXPECT_FALSE(k1.x == k2.x);
  EXPECT_EQ(pairing(P().P, k1.y), pairing(P().P, P().g).pow(k1.x));
}

TEST(Split, SingleBlock) {
  Bytes f = pattern(20, 3, 1);
  auto fb = split_file(f, 1);
  ASSERT_EQ(fb.n(), 1u);
  EXPECT_EQ(fb.blocks[0], f);
}

TEST(Split, RoundTrip) {
  Rng rng(3);
  for (std::uint32_t n : {2u, 7u, 16u}) {
    for (std::size_t len : {16u, 100u, 1000u}) {
      Bytes f = random_bytes(rng, len);
      auto fb = split_file(f, n);
      EXPECT_EQ(fb.join(), f);
      for (auto& b : fb.blocks) EXPECT_LE(b.size(), kMaxBlockBytes);
      EXPECT_EQ(fb.values.size(), fb.n());
    }
  }
}

TEST(Split, NearEqualChunks) {
  auto fb = split_file(pattern(100, 1, 0), 4);
  ASSERT_EQ(fb.n(), 4u);
  for (auto& b : fb.blocks) EXPECT_EQ(b.size(), 25u);
  auto odd = split_file(pattern(10, 1, 0), 3);
  EXPECT_EQ(odd.blocks[0].size(), 4u);
  EXPECT_EQ(odd.blocks[1].size(), 3u);
  EXPECT_EQ(odd.blocks[2].size(), 3u);
}

TEST(Split, OversizedBlocksAreSubChunked) {
  auto fb = split_file(pattern(100, 1, 0), 1);
  ASSERT_EQ(fb.n(), 4u);
  EXPECT_EQ(fb.blocks[0].size(), 30u);
  EXPECT_EQ(fb.blocks[3].size(), 10u);
  for (auto p : fb.parent) EXPECT_EQ(p, 0u);
  EXPECT_EQ(fb.logical_blocks, 1u);
}

TEST(Split, Errors) {
  EXPECT_EQ(code_of([] { split_file({}, 1); }), Errc::empty_file);
  Bytes f(5, 1);
  EXPECT_EQ(code_of([&] { split_file(f, 0); }), Errc::invalid_argument);
  EXPECT_EQ(code_of([&] { split_file(f, 6); }), Errc::invalid_argument);
}

TEST(Tags, IdentityHoldsAndDetectsModification) {
  Rng rng(4);
  auto keys = setup(P(), rng);
  G1 u = random_u(P(), rng);
  Bytes f = random_bytes(rng, 200);
  auto fb = split_file(f, 8);
  auto tags = gen_tags(fb, keys, u);
  ASSERT_EQ(tags.phi.size(), fb.n());
  for (std::size_t i = 0; i < fb.n(); ++i) EXPECT_TRUE(tag_identity(fb.blocks[i], tags.phi[i], u, keys.y));
  Bytes modified = fb.blocks[2];
  modified[0] ^= 1;
  EXPECT_FALSE(tag_identity(modified, tags.phi[2], u, keys.y));
}

TEST(Tags, FrozenVectors) {
  auto fb = split_file(pattern(90, 37, 11), 3);
  auto tags = gen_tags(fb, oracle_keys(), oracle_u());
  ASSERT_EQ(tags.phi.size(), 3u);
  EXPECT_EQ(hex(tags.phi[0]), "022cf21cc62e96064549a70a02526a2e85984763502b5ea8b6c57b1ea1df56c38f");
  EXPECT_EQ(hex(tags.phi[1]), "0218cb590dce31b0ede040d352859a946c9f73dc45999bfcbed6154ceb1a4a02a5");
  EXPECT_EQ(hex(tags.phi[2]), "020cd87929ee78fc543a77451fdabdeca4698ec1c9f84f88c67649cdec314d89a2");
}

TEST(Kernels, SerialAndParallelAgree) {
  Rng rng(5);
  auto keys = setup(P(), rng);
  G1 u = random_u(P(), rng);
  auto fb = split_file(random_bytes(rng, 1500), 50);
  auto hs = hash_blocks(fb.blocks, Exec::serial);
  EXPECT_EQ(hs, hash_blocks(fb.blocks, Exec::parallel));
  auto ts = tag_blocks(hs, fb.values, keys.x, u, Exec::serial);
  EXPECT_EQ(ts, tag_blocks(hs, fb.values, keys.x, u, Exec::parallel));
  std::vector<Scalar> c(fb.n());
  for (auto& v : c) v = rng.random_scalar();
  EXPECT_EQ(aggregate(ts, c, Exec::serial), aggregate(ts, c, Exec::parallel));
  EXPECT_EQ(aggregate(ts, c, Exec::serial), algebra::msm_naive(ts, c));
  EXPECT_TRUE(batch_check_tags(hs, fb.values, ts, u, keys.y, c, Exec::serial));
  EXPECT_TRUE(batch_check_tags(hs, fb.values, ts, u, keys.y, c, Exec::parallel));
  ts[17] = ts[17] + G1::generator();
  EXPECT_FALSE(batch_check_tags(hs, fb.values, ts, u, keys.y, c, Exec::parallel));
  EXPECT_EQ(find_bad_tag(hs, fb.values, ts, u, keys.y, Exec::serial), std::optional<std::size_t>(17));
  EXPECT_EQ(find_bad_tag(hs, fb.values, ts, u, keys.y, Exec::parallel), std::optional<std::size_t>(17));
}

struct World : ::testing::Test {
  Rng rng{6};
  ledger::Registry ca;
  caudit::LogicalClock clock;
  ledger::Ledger ledger{ca, clock, 6};
  Participant user = Participant::generate("user", rng);
  Participant cspt = Participant::generate("cspt", rng);
  Participant tpa = Participant::generate("tpa1", rng);
  AuditKeyPair keys = setup(P(), rng);
  G1 u = random_u(P(), rng);

  void SetUp() override {
    register_participant(ca, user, ledger::Role::user, true);
    register_participant(ca, cspt, ledger::Role::cspt, true);
    register_participant(ca, tpa, ledger::Role::tpa, true);
    ledger.create_channel("audit", {"user", "cspt", "tpa1"}, "cspt");
  }

  DeliveryMessage deliver(const Bytes& f, std::uint32_t n, const Participant& from) {
    auto fb = split_file(f, n);
    auto tags = gen_tags(fb, keys, u);
    return make_delivery(from, cspt.box.pub, fb, tags, keys, P(), rng);
  }
  CsptContext ctx() { return {cspt, ca, ledger}; }
};

TEST_F(World, HonestStorePostsAuditRecord) {
  Bytes f = random_bytes(rng, 160);
  auto d = deliver(f, 8, user);
  auto res = store(DeliveryMessage::from_bytes(d.to_bytes()), ctx(), rng);
  auto txs = ledger.query("audit", "tpa1");
  ASSERT_EQ(txs.size(), 1u);
  EXPECT_EQ(txs[0].id, res.ic_m);
  EXPECT_EQ(txs[0].submitter, "cspt");
  auto pub = load_audit_public(ledger, "tpa1", res.ic_m);
  EXPECT_EQ(pub.hashes.size(), 8u);
  EXPECT_EQ(pub.hashes, hash_blocks(split_file(f, 8).blocks, Exec::serial));
  EXPECT_EQ(pub.u_m, u);
  EXPECT_EQ(pub.y, keys.y);
  EXPECT_EQ(res.record.user_id, "user");
  EXPECT_EQ(res.record.file, f);
  EXPECT_EQ(res.record.ic_m, res.ic_m);
  auto c_mpk = algebra::open_sealed(user.box.secret, pub.sealed_c_mpk);
  ASSERT_TRUE(c_mpk);
  EXPECT_EQ(G1::from_bytes(*c_mpk), res.record.c_mpk);
  EXPECT_EQ(res.record.c_msk * G1::generator(), res.record.c_mpk);
}

TEST_F(World, UnregisteredSenderRejected) {
  auto stranger = Participant::generate("stranger", rng);
  auto d = deliver(random_bytes(rng, 40), 2, stranger);
  EXPECT_EQ(code_of([&] { store(d, ctx(), rng); }), Errc::unregistered_user);
  EXPECT_TRUE(ledger.query("audit", "tpa1").empty());
}

TEST_F(World, CorruptedBlockRejected) {
  auto d = deliver(random_bytes(rng, 160), 8, user);
  d.file[57] ^= 0x40;
  try {
    store(d, ctx(), rng);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::hash_mismatch);
    EXPECT_NE(std::string(e.what()).find("unit 2"), std::string::npos) << e.what();
  }
  EXPECT_TRUE(ledger.query("audit", "tpa1").empty());
}

TEST_F(World, ForgedSignatureAndWrongRecipient) {
  auto d = deliver(random_bytes(rng, 40), 2, user);
  auto bad_sig = d;
  bad_sig.signature = cspt.signer.sign(signed_g_u(P().g, u));
  EXPECT_EQ(code_of([&] { store(bad_sig, ctx(), rng); }), Errc::signature_invalid);
  auto fb = split_file(random_bytes(rng, 40), 2);
  auto misdirected = make_delivery(user, tpa.box.pub, fb, gen_tags(fb, keys, u), keys, P(), rng);
  EXPECT_EQ(code_of([&] { store(misdirected, ctx(), rng); }), Errc::delivery_unreadable);
}

TEST_F(World, MissingLedgerRecord) {
  EXPECT_EQ(code_of([&] { load_audit_public(ledger, "tpa1", 999); }), Errc::ledger_record_missing);
  TxId other = ledger.submit("audit", "user", to_bytes("not an audit entry"));
  EXPECT_EQ(code_of([&] { load_audit_public(ledger, "tpa1", other); }), Errc::ledger_record_missing);
}

TEST(Challenge, FullChallengeCoversAllBlocks) {
  auto c = gen_challenge(16, 16, ChallengeSeeds::from_seed(1), {}, 1);
  std::set<std::uint32_t> s(c.indices.begin(), c.indices.end());
  EXPECT_EQ(s.size(), 16u);
  for (auto& nu : c.coeffs) EXPECT_FALSE(nu.is_zero());
}

TEST(Challenge, Deterministic) {
  std::vector<std::string> tpas = {"t1", "t2"};
  auto a = gen_challenge(5, 40, ChallengeSeeds::from_seed(9), tpas, 3);
  auto b = gen_challenge(5, 40, ChallengeSeeds::from_seed(9), tpas, 3);
  EXPECT_EQ(a.indices, b.indices);
  EXPECT_EQ(a.coeffs, b.coeffs);
  EXPECT_EQ(a.to_bytes(), b.to_bytes());
  EXPECT_NE(a.nonces[0].second, a.nonces[1].second);
  auto c = gen_challenge(5, 40, ChallengeSeeds::from_seed(10), tpas, 3);
  EXPECT_NE(a.indices, c.indices);
}

TEST(Challenge, FrozenIndexSet) {
  auto c = gen_challenge(8, 16, ChallengeSeeds::from_seed(7), {}, 0);
  EXPECT_EQ(c.indices, (std::vector<std::uint32_t>{10, 13, 5, 3, 2, 11, 0, 9}));
  EXPECT_EQ(to_hex(c.coeffs[0].to_bytes()),
            "01168913013b1014641fff039c6fcb712ce445367f1d7d90f7be089995241abf");
}

TEST(Challenge, TooLarge) {
  EXPECT_EQ(code_of([] { gen_challenge(17, 16, ChallengeSeeds::from_seed(1), {}, 0); }),
            Errc::challenge_too_large);
  EXPECT_EQ(code_of([] { gen_challenge(0, 16, ChallengeSeeds::from_seed(1), {}, 0); }),
            Errc::invalid_argument);
}

TEST(Challenge, EncodingRoundTrip) {
  std::vector<std::string> tpas = {"tpa-a", "tpa-b", "tpa-c"};
  auto c = gen_challenge(4, 9, ChallengeSeeds::from_seed(12), tpas, 77);
  auto bytes = c.to_bytes();
  EXPECT_EQ(bytes.size(), 4u + 4 + 32 + 32 + 8 + 4 + 3 * (4 + 5 + 16));
  auto d = AuditChallenge::from_bytes(bytes);
  EXPECT_EQ(d.indices, c.indices);
  EXPECT_EQ(d.coeffs, c.coeffs);
  EXPECT_EQ(d.iu_m, 77u);
  bytes.back() ^= 1;
  EXPECT_EQ(code_of([&] { AuditChallenge::from_bytes(bytes); }), Errc::invalid_encoding);
}

TEST(Proof, SingleBlockUnitCoefficient) {
  Rng rng(8);
  auto keys = setup(P(), rng);
  auto fb = split_file(random_bytes(rng, 64), 4);
  auto tags = gen_tags(fb, keys, random_u(P(), rng));
  AuditChallenge c;
  c.M = 1;
  c.n = static_cast<std::uint32_t>(fb.n());
  c.indices = {2};
  c.coeffs = {Scalar::one()};
  auto proof = gen_proof(c, fb, tags.phi);
  EXPECT_EQ(proof.sigma, tags.phi[2]);
  EXPECT_EQ(proof.mu, fb.values[2]);
}

TEST(Proof, FrozenAggregate) {
  auto fb = split_file(pattern(100, 13, 5), 4);
  auto tags = gen_tags(fb, oracle_keys(), oracle_u());
  auto c = gen_challenge(3, 4, ChallengeSeeds::from_seed(11), {}, 0);
  EXPECT_EQ(c.indices, (std::vector<std::uint32_t>{3, 0, 1}));
  auto proof = gen_proof(c, fb, tags.phi);
  EXPECT_EQ(hex(proof.sigma), "0201b182ee597833c88373782de4b630f9b966b92bd6280fdb2ea5954414869f51");
  EXPECT_EQ(to_hex(proof.mu.to_bytes()), "038ed38404959e7d0f7d6597ef99d388bc881d275bb8fa2b00da4f75d19f04a3");
  EXPECT_EQ(AuditProof::from_bytes(proof.to_bytes()), proof);
  EXPECT_EQ(proof.to_bytes().size(), AuditProof::kEncodedSize);
}

TEST(Proof, MissingBlock) {
  Rng rng(9);
  auto keys = setup(P(), rng);
  auto fb = split_file(random_bytes(rng, 64), 8);
  auto tags = gen_tags(fb, keys, random_u(P(), rng));
  auto c = gen_challenge(8, 8, ChallengeSeeds::from_seed(1), {}, 0);
  std::vector<G1> truncated(tags.phi.begin(), tags.phi.begin() + 5);
  EXPECT_EQ(code_of([&] { gen_proof(c, fb, truncated); }), Errc::missing_block);
}

AuditPublic public_for(const FileBlocks& fb, const AuditKeyPair& keys, const G1& u) {
  AuditPublic pub;
  pub.hashes = hash_blocks(fb.blocks, Exec::serial);
  pub.n = fb.logical_blocks;
  pub.g = P().g;
  pub.y = keys.y;
  pub.u_m = u;
  return pub;
}

TEST(Verify, HonestAcceptsAndMuShiftRejects) {
  Rng rng(10);
  auto keys = setup(P(), rng);
  G1 u = random_u(P(), rng);
  auto fb = split_file(random_bytes(rng, 300), 16);
  auto tags = gen_tags(fb, keys, u);
  auto pub = public_for(fb, keys, u);
  auto c = gen_challenge(8, 16, ChallengeSeeds::from_seed(7), {}, 0);
  auto proof = gen_proof(c, fb, tags.phi);
  EXPECT_TRUE(verify_proof(c, proof, pub, Exec::serial));
  EXPECT_TRUE(verify_proof(c, proof, pub, Exec::parallel));
  auto shifted = proof;
  shifted.mu += Scalar::one();
  EXPECT_FALSE(verify_proof(c, shifted, pub));
}

TEST(Verify, EverySingleCorruptionDetected) {
  Rng rng(11);
  auto keys = setup(P(), rng);
  G1 u = random_u(P(), rng);
  auto fb = split_file(random_bytes(rng, 320), 16);
  auto tags = gen_tags(fb, keys, u);
  auto pub = public_for(fb, keys, u);
  auto c = gen_challenge(8, 16, ChallengeSeeds::from_seed(7), {}, 0);
  for (std::uint32_t idx : c.indices) {
    auto bad = fb;
    bad.blocks[idx][0] ^= 0x01;
    bad.values[idx] = block_value(bad.blocks[idx]);
    EXPECT_FALSE(verify_proof(c, gen_proof(c, bad, tags.phi), pub)) << idx;
  }
  // A block outside the challenge does not affect the verdict.
  for (std::uint32_t idx = 0; idx < 16; ++idx) {
    if (std::count(c.indices.begin(), c.indices.end(), idx)) continue;
    auto bad = fb;
    bad.values[idx] += Scalar::one();
    EXPECT_TRUE(verify_proof(c, gen_proof(c, bad, tags.phi), pub));
    break;
  }
}

TEST(Verify, RandomCompleteness) {
  Rng rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    auto keys = setup(P(), rng);
    G1 u = random_u(P(), rng);
    std::size_t len = 1 + rng.uniform(400);
    auto n = static_cast<std::uint32_t>(1 + rng.uniform(std::min<std::uint64_t>(len, 20)));
    auto fb = split_file(random_bytes(rng, len), n);
    auto tags = gen_tags(fb, keys, u);
    auto pub = public_for(fb, keys, u);
    auto M = static_cast<std::uint32_t>(1 + rng.uniform(fb.n()));
    auto c = gen_challenge(M, static_cast<std::uint32_t>(fb.n()), ChallengeSeeds::from_rng(rng), {}, 0);
    EXPECT_TRUE(verify_proof(c, gen_proof(c, fb, tags.phi), pub)) << trial;
  }
}

TEST(Select, AllWhenKEqualsSize) {
  Rng rng(13);
  std::vector<TpaCandidate> c = {{"a", 5}, {"b", 9}, {"c", 1}};
  for (auto mode : {SelectionMode::complete, SelectionMode::incomplete}) {
    auto a = select_tpas(c, mode, 3, rng);
    std::set<std::string> s(a.selected.begin(), a.selected.end());
    EXPECT_EQ(s, (std::set<std::string>{"a", "b", "c"}));
  }
}

TEST(Select, CompleteModePicksLowestLatency) {
  Rng rng(14);
  std::vector<TpaCandidate> c = {{"a", 5}, {"b", 9}, {"c", 1}};
  auto a = select_tpas(c, SelectionMode::complete, 2, rng);
  EXPECT_EQ(a.selected, (std::vector<std::string>{"c", "a"}));
  EXPECT_EQ(a.DT, (std::vector<std::string>{"c"}));
  EXPECT_EQ(a.LT, (std::vector<std::string>{"a"}));
}

TEST(Select, IncompleteModeReproducible) {
  std::vector<TpaCandidate> c;
  for (int i = 0; i < 30; ++i) c.push_back({"n" + std::to_string(i), 0});
  Rng r1(15), r2(15);
  auto a = select_tpas(c, SelectionMode::incomplete, 6, r1);
  auto b = select_tpas(c, SelectionMode::incomplete, 6, r2);
  EXPECT_EQ(a.selected, b.selected);
  EXPECT_EQ(a.DTid, b.DTid);
  std::set<std::string> s(a.selected.begin(), a.selected.end());
  EXPECT_EQ(s.size(), 6u);
}

TEST(Select, Insufficient) {
  Rng rng(16);
  std::vector<TpaCandidate> c = {{"a", 1}};
  EXPECT_EQ(code_of([&] { select_tpas(c, SelectionMode::complete, 2, rng); }),
            Errc::insufficient_candidates);
}

TEST(Select, VerdictsRecorded) {
  Rng rng(17);
  auto keys = setup(P(), rng);
  G1 u = random_u(P(), rng);
  auto fb = split_file(random_bytes(rng, 120), 4);
  auto tags = gen_tags(fb, keys, u);
  auto pub = public_for(fb, keys, u);
  auto c = gen_challenge(2, 4, ChallengeSeeds::from_seed(3), {}, 0);
  std::vector<TpaCandidate> cands = {{"a", 1}, {"b", 2}, {"c", 3}};
  auto asg = select_tpas(cands, SelectionMode::complete, 3, rng);
  auto proof = gen_proof(c, fb, tags.phi);
  run_verification(asg, c, proof, pub);
  EXPECT_TRUE(asg.accepted());
  proof.mu += Scalar::one();
  run_verification(asg, c, proof, pub);
  EXPECT_FALSE(*asg.VoDT);
  EXPECT_FALSE(*asg.VoLT);
}

}  // namespace
}  // namespace heez::hfaudit
