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

#include <filesystem>

#include "heez/algebra/hash.hpp"
#include "heez/error.hpp"
#include "heez/pipeline/pipeline.hpp"

namespace heez::pipeline {
namespace {

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

Bytes random_bytes(algebra::Rng& rng, std::size_t n) {
  Bytes b(n);
  rng.fill(b);
  return b;
}

TEST(Segments, PartitionWithoutGapOrOverlap) {
  algebra::Rng rng(1);
  for (std::size_t len : {6u, 7u, 64u, 301u}) {
    Bytes s = random_bytes(rng, len);
    Segments seg = split_segments(s);
    EXPECT_EQ(seg.middle.size(), len - 4);
    EXPECT_EQ(seg.head, s[0] << 8 | s[1]);
    EXPECT_EQ(seg.tail, s[len - 2] << 8 | s[len - 1]);
    EXPECT_TRUE(std::equal(seg.middle.begin(), seg.middle.end(), s.begin() + 2));
    EXPECT_EQ(join_segments(seg), s);
  }
  EXPECT_EQ(code_of([] { split_segments(Bytes(5)); }), Errc::data_too_short);
}

TEST(Serialization, KeepsDataWordsAtTheEnds) {
  algebra::Rng rng(2);
  Bytes f = random_bytes(rng, 40);
  HfSerialization s{f, 4, 9, {G1::generator(), G1::generator() * algebra::Scalar::from_u64(3)}};
  Bytes raw = s.to_bytes();
  EXPECT_EQ(raw.size(), 40 + 8 + 4 + 8 + 4 + 2 * 33u);
  EXPECT_EQ(raw[0], f[0]);
  EXPECT_EQ(raw.back(), f.back());
  auto back = HfSerialization::from_bytes(raw);
  EXPECT_EQ(back.file, f);
  EXPECT_EQ(back.n, 4u);
  EXPECT_EQ(back.ic_m, 9u);
  EXPECT_EQ(back.tags, s.tags);
  raw.pop_back();
  EXPECT_EQ(code_of([&] { HfSerialization::from_bytes(raw); }), Errc::invalid_encoding);
}

TEST(Config, ParsesPipelineSection) {
  auto cfg = PipelineConfig::from_json(R"({"pipeline": {"blocks": 8, "challenge": 4, "tpas": 3, "parallel": false},
                                          "caudit": {"timeout_ticks": 50}})");
  EXPECT_EQ(cfg.blocks, 8u);
  EXPECT_EQ(cfg.challenge, 4u);
  EXPECT_EQ(cfg.tpas, 3u);
  EXPECT_EQ(cfg.exec, hfaudit::Exec::serial);
  EXPECT_EQ(cfg.caudit.timeout_ticks, 50u);
  EXPECT_EQ(code_of([] { PipelineConfig::from_json(R"({"pipeline": {"blocks": 0}})"); }), Errc::invalid_argument);
}

struct Net : ::testing::Test {
  Deployment d{77};
  const UserAccount& alice = d.add_user("alice");
  const UserAccount& bob = d.add_user("bob");
  algebra::Rng rng{78};
};

TEST_F(Net, MiddleSegmentMatchesSerialization) {
  Bytes x = random_bytes(rng, 64);
  auto p = d.encrypt(x, alice);
  auto hf = caudit::HfSegment::from_bytes(p.hf_segment);
  const auto& entry = d.cspt_store().at(hf.ic_m);
  Bytes s = HfSerialization{x, entry.n, hf.ic_m, entry.tags}.to_bytes();
  EXPECT_EQ(entry.middle, Bytes(s.begin() + 2, s.end() - 2));
  EXPECT_EQ(hf.middle_len, s.size() - 4);
  EXPECT_EQ(p.trailer, caudit::bit_length_trailer(s.size()));
  EXPECT_EQ(p.routes.front(), hf.ic_m);
  EXPECT_EQ(d.ledger().query(ledger::kAuditChannel, "admin").size(), 1u);
}

TEST_F(Net, MinimumInputRoundTrips) {
  Bytes x = {1, 2, 3, 4, 5, 6};
  auto p = d.encrypt(x, alice);
  EXPECT_EQ(d.decrypt(caudit::SecuredPayload::from_bytes(p.to_bytes()), alice), x);
  EXPECT_EQ(code_of([&] { d.encrypt(Bytes{1, 2, 3, 4, 5}, alice); }), Errc::data_too_short);
}

TEST_F(Net, RandomRoundTrips) {
  for (int i = 0; i < 100; ++i) {
    Bytes x = random_bytes(rng, 6 + rng.uniform(250));
    const UserAccount& who = i % 2 ? alice : bob;
    auto p = d.encrypt(x, who);
    ASSERT_EQ(d.decrypt(caudit::SecuredPayload::from_bytes(p.to_bytes()), who), x) << i;
  }
  EXPECT_EQ(d.counters().release, 100u);
}

TEST_F(Net, UnregisteredUserCannotEncryptOrDecrypt) {
  Bytes x = random_bytes(rng, 32);
  UserAccount mallory = UserAccount::derive("mallory", 77, d.bases());
  EXPECT_EQ(code_of([&] { d.encrypt(x, mallory); }), Errc::unregistered_user);
  auto p = d.encrypt(x, alice);
  EXPECT_EQ(code_of([&] { d.decrypt(p, mallory); }), Errc::unregistered_endpoint);
  EXPECT_EQ(d.counters().ez_check, 0u);
}

TEST_F(Net, WrongUserStopsAtEzCheck) {
  auto p = d.encrypt(random_bytes(rng, 48), alice);
  EXPECT_EQ(code_of([&] { d.decrypt(p, bob); }), Errc::ez_key_failed);
  EXPECT_EQ(d.counters().ez_check, 1u);
  EXPECT_EQ(d.counters().head_decrypt, 0u);
  EXPECT_EQ(d.counters().release, 0u);
}

TEST_F(Net, WrongEncBlockKeyStopsBeforeHeadDecrypt) {
  auto p = d.encrypt(random_bytes(rng, 48), alice);
  UserAccount forged = alice;
  forged.encblock_key[3] ^= 0x40;
  EXPECT_EQ(code_of([&] { d.decrypt(p, forged); }), Errc::encblock_key_failed);
  EXPECT_EQ(d.counters().head_decrypt, 0u);
}

TEST_F(Net, CorruptedCsptBlockFailsAudit) {
  Bytes x = random_bytes(rng, 200);
  auto p = d.encrypt(x, alice);
  auto hf = caudit::HfSegment::from_bytes(p.hf_segment);
  auto& middle = d.cspt_store().at(hf.ic_m).middle;
  middle[middle.size() - 40] ^= 0x01;  // a data byte, past the tag area
  EXPECT_EQ(code_of([&] { d.decrypt(p, alice); }), Errc::audit_failed);
  EXPECT_EQ(d.counters().audit, 1u);
  EXPECT_EQ(d.counters().release, 0u);
  EXPECT_EQ(errc_message(Errc::audit_failed), "The data is incomplete.");
}

TEST_F(Net, CorruptedTagAreaFailsAudit) {
  auto p = d.encrypt(random_bytes(rng, 200), alice);
  auto hf = caudit::HfSegment::from_bytes(p.hf_segment);
  d.cspt_store().at(hf.ic_m).middle[30] ^= 0x10;
  EXPECT_EQ(code_of([&] { d.decrypt(p, alice); }), Errc::audit_failed);
  EXPECT_EQ(d.counters().release, 0u);
}

TEST_F(Net, IncompletePayloadStopsAtFirstChannel) {
  auto p = d.encrypt(random_bytes(rng, 48), alice);
  auto missing = p;
  missing.encblock_segment.clear();
  EXPECT_EQ(code_of([&] { d.decrypt(missing, alice); }), Errc::incomplete_data);
  auto trailer = p;
  trailer.trailer ^= 8;
  EXPECT_EQ(code_of([&] { d.decrypt(trailer, alice); }), Errc::incomplete_data);
  EXPECT_EQ(d.counters().ez_check, 0u);
}

TEST_F(Net, SilentCsptOpensAuditSlot) {
  auto p = d.encrypt(random_bytes(rng, 48), alice);
  auto hf = caudit::HfSegment::from_bytes(p.hf_segment);
  d.cspt_store().erase(hf.ic_m);
  EXPECT_EQ(code_of([&] { d.decrypt(p, alice); }), Errc::incomplete_data);
  ASSERT_EQ(d.scheduler().slots().size(), 1u);
  EXPECT_EQ(d.scheduler().slots()[0].subject, "cspt");
  EXPECT_EQ(d.counters().second_channel, 0u);
}

TEST_F(Net, StandaloneAudit) {
  auto p = d.encrypt(random_bytes(rng, 300), alice);
  auto ic_m = p.routes.front();
  auto out = d.audit(ic_m, 5, 4);
  EXPECT_TRUE(out.accepted);
  EXPECT_EQ(out.challenge.M, 5u);
  EXPECT_EQ(out.assignment.selected.size(), 4u);
  d.cspt_store().at(ic_m).file[100] ^= 1;
  EXPECT_FALSE(d.audit(ic_m, 0, 2).accepted);
}

TEST(Persistence, SaveLoadContinuesTheSession) {
  auto dir = std::filesystem::temp_directory_path() / "heez_pipeline_state";
  std::filesystem::remove_all(dir);
  Bytes x(500);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<std::uint8_t>(i * 7);
  Bytes container;
  {
    Deployment d(5);
    d.add_user("carol");
    container = d.encrypt(x, d.user("carol")).to_bytes();
    d.save(dir);
  }
  auto d = Deployment::load(dir, 5);
  EXPECT_EQ(d->decrypt(caudit::SecuredPayload::from_bytes(container), d->user("carol")), x);
  EXPECT_EQ(d->ledger().transaction_count(), 2u);
  EXPECT_EQ(code_of([&] { Deployment::load(dir, 6); }), Errc::invalid_argument);
  std::filesystem::remove_all(dir);
}

TEST(Determinism, FrozenPayloadDigest) {
  auto run = [] {
    Deployment d(2024);
    Bytes x(100);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<std::uint8_t>(i * 31 + 7);
    return to_hex(algebra::sha256(d.encrypt(x, d.add_user("alice")).to_bytes()));
  };
  std::string digest = run();
  EXPECT_EQ(digest, run());
  EXPECT_EQ(digest, "0d9e6bfc2585b2c2b38a3881ca588013e6fcf644fd99443e491bb0c68d9a342b");
}

}  // namespace
}  // namespace heez::pipeline
