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

#include <nlohmann/json.hpp>

#include "heez/cli_bench/bench.hpp"
#include "heez/error.hpp"

namespace heez::cli_bench {
namespace {

ScenarioConfig quick() {
  ScenarioConfig c;
  c.repetitions = 3;
  c.warmup = 0;
  c.blocks = 8;
  return c;
}

TEST(Accounting, EmptyFlowIsZero) { EXPECT_EQ(account_message_bits(Transcript{}), 0u); }

TEST(Accounting, PresentationBitsAreEncodingDetermined) {
  auto a = presentation_transcript(1);
  auto b = presentation_transcript(2);
  // 3 G1 + 2 G2 + 3 scalars, then two G2 challenge messages.
  const std::uint64_t expected = 8 * (3 * 33 + 2 * 65 + 3 * 32 + 2 * 65);
  EXPECT_EQ(account_message_bits(a), expected);
  EXPECT_EQ(account_message_bits(b), expected);
  EXPECT_EQ(a.fields.size(), 10u);
}

TEST(Accounting, AuditBitsAreRunInvariant) {
  auto a = audit_transcript(3, 2);
  auto b = audit_transcript(4, 2);
  EXPECT_EQ(account_message_bits(a), account_message_bits(b));
  auto j = nlohmann::json::parse(transcript_json(a, kReferenceCommunicationBits));
  EXPECT_EQ(j["bits"].get<std::uint64_t>(), account_message_bits(a));
  EXPECT_EQ(j["reference_bits"].get<double>(), 1926);
}

TEST(Bench, SinglePointGrid) {
  auto c = quick();
  c.tpa_grid = {1};
  auto r = bench_pairings_vs_tpas(c);
  ASSERT_EQ(r.points.size(), 1u);
  EXPECT_TRUE(r.trend_ok);
  // A lone TPA fills both the data and the tag set, so it verifies twice.
  EXPECT_EQ(r.points[0].pairings, 4u);
  auto lines = r.to_json_lines();
  ASSERT_EQ(lines.size(), 2u);
  auto summary = nlohmann::json::parse(lines.back());
  EXPECT_EQ(summary["reference"]["total_rough_cost_ms"].get<double>(), 76);
}

TEST(Bench, PairingCountsScaleWithTpas) {
  auto c = quick();
  c.tpa_grid = {2, 4};
  auto r = bench_pairings_vs_tpas(c);
  EXPECT_EQ(r.points[0].pairings, 4u);
  EXPECT_EQ(r.points[1].pairings, 8u);
}

TEST(Bench, ParallelShardingGivesSamePoints) {
  auto c = quick();
  c.block_grid = {4, 8};
  auto serial = bench_pairings_vs_blocks(c);
  c.parallel = true;
  auto sharded = bench_pairings_vs_blocks(c);
  ASSERT_EQ(serial.points.size(), sharded.points.size());
  for (std::size_t i = 0; i < serial.points.size(); ++i) {
    EXPECT_EQ(serial.points[i].value, sharded.points[i].value);
    EXPECT_EQ(serial.points[i].pairings, sharded.points[i].pairings);
    EXPECT_EQ(serial.points[i].bits, sharded.points[i].bits);
  }
}

TEST(Bench, ZeroNeighboursIsAnError) {
  auto c = quick();
  c.neighbor_grid = {0};
  try {
    bench_incomplete_info(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::insufficient_candidates);
  }
}

TEST(Bench, IncompleteInfoReportsReferences) {
  auto c = quick();
  c.neighbor_grid = {4, 12};
  auto r = bench_incomplete_info(c);
  ASSERT_EQ(r.points.size(), 2u);
  EXPECT_GT(r.points[1].bits, r.points[0].bits);
  EXPECT_EQ(r.reference.at("incomplete_info_ms_at_30"), 1100);
  EXPECT_EQ(r.reference.at("incomplete_info_ms_at_120"), 3100);
}

TEST(Config, ReadsBenchSection) {
  auto c = ScenarioConfig::from_json(R"({"bench": {"tpa_grid": [1, 3], "repetitions": 5}})");
  EXPECT_EQ(c.tpa_grid, (std::vector<std::uint32_t>{1, 3}));
  EXPECT_EQ(c.repetitions, 5u);
  EXPECT_THROW(ScenarioConfig::from_json(R"({"bench": {"tpa_grid": []}})"), Error);
  EXPECT_THROW(ScenarioConfig::from_json(R"({"bench": {"tpas": 0}})"), Error);
}

}  // namespace
}  // namespace heez::cli_bench
