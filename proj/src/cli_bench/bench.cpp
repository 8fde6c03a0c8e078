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

#include "heez/cli_bench/bench.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <memory>
#include <nlohmann/json.hpp>
#include <numeric>
#include <thread>

#include "heez/algebra/ecdsa.hpp"
#include "heez/error.hpp"
#include "heez/hfaudit/kernels.hpp"
#include "heez/pipeline/pipeline.hpp"

namespace heez::cli_bench {

namespace {

using Clock = std::chrono::steady_clock;
using pipeline::Deployment;
using pipeline::PipelineConfig;

std::vector<std::uint32_t> read_grid(const nlohmann::json& j, const char* key) {
  if (!j[key].is_array()) throw Error(Errc::invalid_argument, std::string("config: bench.") + key);
  std::vector<std::uint32_t> out;
  for (auto& v : j[key]) {
    if (!v.is_number_unsigned()) throw Error(Errc::invalid_argument, std::string("config: bench.") + key);
    out.push_back(v.get<std::uint32_t>());
  }
  if (out.empty()) throw Error(Errc::invalid_argument, std::string("config: bench.") + key + " is empty");
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

// One timed repetition: returns (pairings, message bits).
using Body = std::function<std::pair<std::uint64_t, std::uint64_t>()>;

struct Samples {
  std::vector<double> ms;
  std::uint64_t pairings = 0, bits = 0;

  void run(const Body& body) {
    auto t0 = Clock::now();
    auto [p, b] = body();
    ms.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    pairings = p;
    bits = b;
  }

  BenchPoint point(std::string param, std::uint64_t value) const {
    BenchPoint pt{std::move(param), value, 0, 0, pairings, bits};
    if (!ms.empty()) {
      pt.median_ms = median(ms);
      pt.mean_ms = std::accumulate(ms.begin(), ms.end(), 0.0) / static_cast<double>(ms.size());
    }
    return pt;
  }
};

// Builds one body per grid point, runs the warmups, then times the
// repetitions. Serially, repetitions are interleaved across points so slow
// drift in machine load affects every point alike; with config.parallel each
// point runs on its own thread.
template <class Setup>
std::vector<BenchPoint> sweep(const ScenarioConfig& config, const std::vector<std::uint32_t>& grid,
                              const std::string& param, Setup&& setup) {
  std::vector<Samples> samples(grid.size());
  if (config.parallel) {
    std::vector<std::future<Samples>> jobs;
    for (auto v : grid)
      jobs.push_back(std::async(std::launch::async, [&, v] {
        Body body = setup(v);
        Samples s;
        for (std::uint32_t i = 0; i < config.warmup; ++i) body();
        for (std::uint32_t i = 0; i < config.repetitions; ++i) s.run(body);
        return s;
      }));
    for (std::size_t i = 0; i < jobs.size(); ++i) samples[i] = jobs[i].get();
  } else {
    std::vector<Body> bodies;
    for (auto v : grid) bodies.push_back(setup(v));
    for (auto& b : bodies)
      for (std::uint32_t i = 0; i < config.warmup; ++i) b();
    for (std::uint32_t rep = 0; rep < config.repetitions; ++rep)
      for (std::size_t i = 0; i < bodies.size(); ++i) samples[i].run(bodies[i]);
  }
  std::vector<BenchPoint> out;
  for (std::size_t i = 0; i < grid.size(); ++i) out.push_back(samples[i].point(param, grid[i]));
  return out;
}

bool non_decreasing(const std::vector<BenchPoint>& pts) {
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].median_ms < pts[i - 1].median_ms) return false;
  return true;
}

std::shared_ptr<Deployment> deployment(const ScenarioConfig& c, std::uint32_t blocks, std::uint32_t pool) {
  PipelineConfig pc;
  pc.blocks = blocks;
  pc.tpa_pool = std::max<std::uint32_t>(pool, 1);
  pc.exec = hfaudit::Exec::serial;
  return std::make_shared<Deployment>(c.seed, pc);
}

// A stored file of exactly this many units; returns its record id.
ledger::TxId store_file(Deployment& d, std::uint32_t blocks) {
  Bytes data(static_cast<std::size_t>(blocks) * hfaudit::kMaxBlockBytes);
  algebra::Rng rng(blocks);
  rng.fill(data);
  const auto& user = d.add_user("bench-user");
  return d.encrypt(data, user).routes.front();
}

// Runs one audit; returns (pairings, message bits).
template <class F>
std::pair<std::uint64_t, std::uint64_t> audit_once(F&& run) {
  std::uint64_t before = algebra::thread_pairing_count();
  pipeline::AuditOutcome out = run();
  if (!out.accepted) throw Error(Errc::audit_failed, "honest benchmark audit rejected");
  std::uint64_t bits = 8 * (out.challenge.to_bytes().size() + out.proof.to_bytes().size());
  return {algebra::thread_pairing_count() - before, bits};
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json(std::string_view text) {
  ScenarioConfig cfg;
  auto doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw Error(Errc::invalid_argument, "config: expected an object");
  if (!doc.contains("bench")) return cfg;
  const auto& b = doc["bench"];
  if (b.contains("tpa_grid")) cfg.tpa_grid = read_grid(b, "tpa_grid");
  if (b.contains("block_grid")) cfg.block_grid = read_grid(b, "block_grid");
  if (b.contains("neighbor_grid")) cfg.neighbor_grid = read_grid(b, "neighbor_grid");
  auto read = [&](const char* key, std::uint32_t& out) {
    if (!b.contains(key)) return;
    if (!b[key].is_number_unsigned()) throw Error(Errc::invalid_argument, std::string("config: bench.") + key);
    out = b[key].get<std::uint32_t>();
  };
  read("repetitions", cfg.repetitions);
  read("warmup", cfg.warmup);
  read("blocks", cfg.blocks);
  read("tpas", cfg.tpas);
  if (cfg.blocks == 0 || cfg.tpas == 0) throw Error(Errc::invalid_argument, "config: bench.blocks and bench.tpas must be positive");
  return cfg;
}

BenchReport bench_pairings_vs_tpas(const ScenarioConfig& config) {
  BenchReport r{"pairings_vs_tpas", {}, {{"total_rough_cost_ms", kReferenceTotalCostMs}}, environment_fingerprint(), false};
  std::uint32_t pool = *std::max_element(config.tpa_grid.begin(), config.tpa_grid.end());
  r.points = sweep(config, config.tpa_grid, "tpas", [&](std::uint32_t k) -> Body {
    auto d = deployment(config, config.blocks, pool);
    auto ic_m = store_file(*d, config.blocks);
    return [d, ic_m, k] { return audit_once([&] { return d->audit(ic_m, 0, k); }); };
  });
  r.trend_ok = non_decreasing(r.points);
  return r;
}

BenchReport bench_pairings_vs_blocks(const ScenarioConfig& config) {
  BenchReport r{"pairings_vs_blocks", {}, {{"total_rough_cost_ms", kReferenceTotalCostMs}}, environment_fingerprint(), false};
  const std::uint32_t k = config.tpas;
  r.points = sweep(config, config.block_grid, "blocks", [&](std::uint32_t n) -> Body {
    auto d = deployment(config, n, k);
    auto ic_m = store_file(*d, n);
    return [d, ic_m, k] { return audit_once([&] { return d->audit(ic_m, 0, k); }); };
  });
  r.trend_ok = non_decreasing(r.points);
  return r;
}

BenchReport bench_incomplete_info(const ScenarioConfig& config) {
  BenchReport r{"incomplete_info",
                {},
                {{"incomplete_info_ms_at_30", kReferenceIncompleteMs30}, {"incomplete_info_ms_at_120", kReferenceIncompleteMs120}},
                environment_fingerprint(),
                false};
  for (auto n : config.neighbor_grid)
    if (n < config.tpas) throw Error(Errc::insufficient_candidates, "neighbour count " + std::to_string(n));
  struct Report {
    hfaudit::TpaCandidate who;
    Bytes msg, sig;
    algebra::EcdsaPublicKey pub;
  };
  const std::uint32_t k = config.tpas;
  r.points = sweep(config, config.neighbor_grid, "neighbors", [&](std::uint32_t neighbours) -> Body {
    auto d = deployment(config, config.blocks, neighbours);
    auto ic_m = store_file(*d, config.blocks);
    // Each neighbour reports its latency under its own signature.
    auto rng = std::make_shared<algebra::Rng>(algebra::Rng(config.seed).fork("neighbours:" + std::to_string(neighbours)));
    auto reports = std::make_shared<std::vector<Report>>();
    for (std::uint32_t i = 0; i < neighbours; ++i) {
      auto keys = algebra::EcdsaKeyPair::generate(*rng);
      hfaudit::TpaCandidate c{"tpa" + std::to_string(i + 1), 5.0 + static_cast<double>(rng->uniform(4500)) / 100.0};
      Bytes msg(to_bytes_view(c.id).begin(), to_bytes_view(c.id).end());
      msg.push_back(static_cast<std::uint8_t>(c.latency_ms));
      auto sig = keys.sign(msg);
      reports->push_back({c, msg, sig, keys.public_key()});
    }
    return [d, ic_m, rng, reports, k] {
      std::vector<hfaudit::TpaCandidate> candidates;
      for (auto& rep : *reports)
        if (algebra::ecdsa_verify(rep.pub, rep.msg, rep.sig)) candidates.push_back(rep.who);
      auto assignment = hfaudit::select_tpas(candidates, hfaudit::SelectionMode::incomplete, k, *rng);
      auto [pairings, bits] = audit_once([&] { return d->audit(ic_m, 0, std::move(assignment)); });
      std::uint64_t report_bits = 0;
      for (auto& rep : *reports) report_bits += 8 * (rep.msg.size() + rep.sig.size());
      return std::pair{pairings, bits + report_bits};
    };
  });
  r.trend_ok = r.points.size() >= 2 && r.points.back().median_ms > r.points.front().median_ms;
  return r;
}

std::vector<std::string> BenchReport::to_json_lines() const {
  std::vector<std::string> lines;
  for (auto& p : points) {
    nlohmann::json j = {{"scenario", scenario},
                        {"params", {{p.param, p.value}}},
                        {"ms", {{"median", p.median_ms}, {"mean", p.mean_ms}}},
                        {"bits", p.bits},
                        {"pairings", p.pairings}};
    lines.push_back(j.dump());
  }
  nlohmann::json summary = {{"scenario", scenario},
                            {"summary", true},
                            {"trend_ok", trend_ok},
                            {"reference", reference},
                            {"environment", environment}};
  lines.push_back(summary.dump());
  return lines;
}

void Transcript::record(std::string message, std::string field, std::uint64_t bytes) {
  fields.push_back({std::move(message), std::move(field), 8 * bytes});
}

std::uint64_t account_message_bits(const Transcript& flow) {
  std::uint64_t total = 0;
  for (auto& f : flow.fields) total += f.bits;
  return total;
}

Transcript presentation_transcript(std::uint64_t seed) {
  Deployment d(seed);
  const auto& user = d.add_user("alice");
  auto payload = d.encrypt(Bytes{0, 1, 2, 3, 4, 5, 6, 7}, user);
  auto ezs = caudit::EzSegment::from_bytes(payload.ez_segment);

  algebra::Rng rng = algebra::Rng(seed).fork("presentation");
  algebra::Scalar b = rng.random_scalar();
  auto pres = ez::blind(ezs.credential, user.ez_keys, d.bases(), b, rng);
  auto state = ez::sp_challenge(pres, ezs.credential.pk_cp, rng);
  auto pk3 = ez::user_respond(state.pk2, b);
  ez::sp_finish(state, pk3, pres, d.bases());

  Transcript t{"credential_presentation", {}};
  const std::string m1 = "presentation";
  t.record(m1, "sigma'", algebra::G1::kEncodedSize);
  t.record(m1, "pk'_u", algebra::G1::kEncodedSize);
  t.record(m1, "pk'_CP", algebra::G2::kEncodedSize);
  t.record(m1, "P'", algebra::G2::kEncodedSize);
  t.record(m1, "C'", algebra::Scalar::kEncodedSize);
  t.record(m1, "R'", algebra::G1::kEncodedSize);
  t.record(m1, "s'", algebra::Scalar::kEncodedSize);
  t.record(m1, "t'", algebra::Scalar::kEncodedSize);
  t.record("sp_challenge", "pk''", state.pk2.to_bytes().size());
  t.record("user_response", "pk'''", pk3.to_bytes().size());
  if (account_message_bits(t) != 8 * (pres.to_bytes().size() + 2 * algebra::G2::kEncodedSize))
    throw Error(Errc::invalid_encoding, "presentation field breakdown disagrees with the encoding");
  return t;
}

Transcript audit_transcript(std::uint64_t seed, std::uint32_t tpas) {
  PipelineConfig pc;
  pc.blocks = 16;
  pc.tpa_pool = std::max<std::uint32_t>(tpas, 1);
  Deployment d(seed, pc);
  const auto& user = d.add_user("alice");
  Bytes data(16 * hfaudit::kMaxBlockBytes, 0x5A);
  auto ic_m = d.encrypt(data, user).routes.front();
  auto out = d.audit(ic_m, 8, tpas);
  if (!out.accepted) throw Error(Errc::audit_failed, "honest audit rejected");

  Transcript t{"audit", {}};
  const auto& c = out.challenge;
  t.record("challenge", "M", 4);
  t.record("challenge", "n", 4);
  t.record("challenge", "sd_bl", c.seeds.sd_bl.size());
  t.record("challenge", "sd_ra", c.seeds.sd_ra.size());
  t.record("challenge", "iu_m", 8);
  t.record("challenge", "nonce_count", 4);
  for (auto& [id, nonce] : c.nonces) {
    t.record("challenge", "tpa_id:" + id, 4 + id.size());
    t.record("challenge", "nonce:" + id, nonce.size());
  }
  t.record("proof", "sigma", algebra::G1::kEncodedSize);
  t.record("proof", "mu", algebra::Scalar::kEncodedSize);
  if (account_message_bits(t) != 8 * (c.to_bytes().size() + out.proof.to_bytes().size()))
    throw Error(Errc::invalid_encoding, "audit field breakdown disagrees with the encoding");
  return t;
}

std::string transcript_json(const Transcript& t, double reference_bits) {
  nlohmann::json fields = nlohmann::json::array();
  for (auto& f : t.fields) fields.push_back({{"message", f.message}, {"field", f.field}, {"bits", f.bits}});
  nlohmann::json j = {{"scenario", "communication_" + t.flow},
                      {"bits", account_message_bits(t)},
                      {"fields", fields}};
  if (reference_bits > 0) j["reference_bits"] = reference_bits;
  return j.dump();
}

std::string environment_fingerprint() {
  std::string env = "compiler=";
#if defined(__clang__)
  env += "clang-" __clang_version__;
#elif defined(__GNUC__)
  env += "gcc-" __VERSION__;
#endif
  env += ";kernel_threads=" + std::to_string(hfaudit::parallel_threads());
  env += ";hardware_threads=" + std::to_string(std::thread::hardware_concurrency());
#ifdef NDEBUG
  env += ";build=release";
#else
  env += ";build=debug";
#endif
  return env;
}

}  // namespace heez::cli_bench
