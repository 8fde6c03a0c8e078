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

// heez: command-line front end over a persisted deployment state directory.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "heez/cli_bench/bench.hpp"
#include "heez/error.hpp"
#include "heez/pipeline/pipeline.hpp"

namespace fs = std::filesystem;
using namespace heez;

namespace {

enum Exit { kOk = 0, kUsage = 1, kProtocol = 2, kTrend = 3 };

struct Options {
  std::uint64_t seed = 1;
  std::string config;
  std::string out;
  bool parallel = false;
  std::string state = "heez-state";
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, std::string_view data) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot write " + p.string());
  out << data;
}

Bytes as_bytes(const std::string& s) { return Bytes(s.begin(), s.end()); }

// Emits to --out when given, stdout otherwise.
void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    spit(o.out, text);
  }
}

pipeline::PipelineConfig pipeline_config(const Options& o) {
  auto cfg = o.config.empty() ? pipeline::PipelineConfig{} : pipeline::PipelineConfig::from_json(slurp(o.config));
  if (!o.parallel) cfg.exec = hfaudit::Exec::serial;
  return cfg;
}

std::unique_ptr<pipeline::Deployment> open_state(const Options& o, bool create) {
  if (fs::exists(fs::path(o.state) / "state.bin")) return pipeline::Deployment::load(o.state, o.seed, pipeline_config(o));
  if (!create) throw Error(Errc::io_error, "no state in " + o.state + "; run keygen first");
  return std::make_unique<pipeline::Deployment>(o.seed, pipeline_config(o));
}

std::string key_file(const pipeline::UserAccount& u) {
  nlohmann::json j = {{"id", u.id()},
                      {"ez_sk", to_hex(u.ez_keys.sk.to_bytes())},
                      {"ez_pk", to_hex(u.ez_keys.pk.to_bytes())},
                      {"encblock_key", to_hex(u.encblock_key)},
                      {"audit_y", to_hex(u.audit_keys.y.to_bytes())}};
  return j.dump(2) + "\n";
}

// The presenting account: registered identity with the secrets from the key file.
pipeline::UserAccount account_from_key(pipeline::Deployment& d, const std::string& text) {
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.contains("id") || !j.contains("ez_sk") || !j.contains("encblock_key"))
    throw Error(Errc::invalid_encoding, "key file");
  std::string id = j["id"].get<std::string>();
  pipeline::UserAccount acct = pipeline::UserAccount::derive(id, 0, d.bases());
  try {
    acct = d.user(id);
  } catch (const Error&) {
    // Unknown identities still present; M-Audit refuses them.
  }
  acct.ez_keys = ez::UserKeyPair::from_secret(d.bases(), algebra::Scalar::from_bytes(from_hex(j["ez_sk"].get<std::string>())));
  Bytes k = from_hex(j["encblock_key"].get<std::string>());
  if (k.size() != acct.encblock_key.size()) throw Error(Errc::invalid_encoding, "encblock key length");
  std::copy(k.begin(), k.end(), acct.encblock_key.begin());
  return acct;
}

int run_bench(const Options& o, const std::string& scenario) {
  auto cfg = o.config.empty() ? cli_bench::ScenarioConfig{} : cli_bench::ScenarioConfig::from_json(slurp(o.config));
  cfg.seed = o.seed;
  cfg.parallel = o.parallel;
  std::string lines;
  bool trends = true;
  auto add = [&](const cli_bench::BenchReport& r) {
    for (auto& l : r.to_json_lines()) lines += l + "\n";
    trends = trends && r.trend_ok;
  };
  if (scenario == "all" || scenario == "tpas") add(cli_bench::bench_pairings_vs_tpas(cfg));
  if (scenario == "all" || scenario == "blocks") add(cli_bench::bench_pairings_vs_blocks(cfg));
  if (scenario == "all" || scenario == "neighbors") add(cli_bench::bench_incomplete_info(cfg));
  if (scenario == "all" || scenario == "comm") {
    lines += cli_bench::transcript_json(cli_bench::presentation_transcript(cfg.seed), 0) + "\n";
    lines += cli_bench::transcript_json(cli_bench::audit_transcript(cfg.seed), cli_bench::kReferenceCommunicationBits) + "\n";
  }
  emit(o, lines);
  return trends ? kOk : kTrend;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heez: secure IoT-cloud data pipeline"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--seed", o.seed, "Deterministic seed (HEEZ_SEED overrides)");
  app.add_option("--config", o.config, "JSON configuration file");
  app.add_option("--out", o.out, "Output file");
  app.add_flag("--parallel", o.parallel, "Use parallel kernels and shard benchmark points");
  app.add_option("--state", o.state, "State directory")->capture_default_str();

  std::string user, in, key, channel, scenario = "all";
  std::uint64_t record = 0;
  std::uint32_t challenge = 0, tpas = 2;

  auto* keygen = app.add_subcommand("keygen", "Register a user and write its key file");
  keygen->add_option("--user", user)->required();
  auto* encrypt = app.add_subcommand("encrypt", "Protect a file into a HEEZ container");
  encrypt->add_option("--user", user)->required();
  encrypt->add_option("--in", in)->required();
  auto* decrypt = app.add_subcommand("decrypt", "Recover a file from a HEEZ container");
  decrypt->add_option("--key", key)->required();
  decrypt->add_option("--in", in)->required();
  auto* audit = app.add_subcommand("audit", "Audit a stored file by its ledger record id");
  audit->add_option("--id", record)->required();
  audit->add_option("--challenge", challenge, "Challenged units (0 = all)");
  audit->add_option("--tpas", tpas);
  auto* dump = app.add_subcommand("ledger-dump", "Print the ledger log");
  dump->add_option("--channel", channel);
  auto* bench = app.add_subcommand("bench", "Run the measurement harness");
  bench->add_option("--scenario", scenario)->check(CLI::IsMember({"all", "tpas", "blocks", "neighbors", "comm"}));

  CLI11_PARSE(app, argc, argv);
  if (const char* env = std::getenv("HEEZ_SEED")) {
    try {
      o.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "heez: HEEZ_SEED is not an unsigned integer\n";
      return kUsage;
    }
  }

  try {
    if (bench->parsed()) return run_bench(o, scenario);

    auto d = open_state(o, keygen->parsed());
    int code = kOk;
    if (keygen->parsed()) {
      emit(o, key_file(d->add_user(user)));
    } else if (encrypt->parsed()) {
      pipeline::UserAccount acct;
      try {
        acct = d->user(user);
      } catch (const Error&) {
        throw Error(Errc::unregistered_user, user);
      }
      auto payload = d->encrypt(as_bytes(slurp(in)), acct);
      Bytes c = payload.to_bytes();
      emit(o, std::string(c.begin(), c.end()));
      std::cerr << "stored record " << payload.routes.front() << "\n";
    } else if (decrypt->parsed()) {
      auto acct = account_from_key(*d, slurp(key));
      Bytes c = as_bytes(slurp(in));
      Bytes plain = d->decrypt(caudit::SecuredPayload::from_bytes(c), acct);
      emit(o, std::string(plain.begin(), plain.end()));
    } else if (audit->parsed()) {
      auto out = d->audit(record, challenge, tpas);
      nlohmann::json j = {{"record", record},
                          {"challenged", out.challenge.M},
                          {"units", out.challenge.n},
                          {"tpas", out.assignment.selected},
                          {"accepted", out.accepted}};
      emit(o, j.dump() + "\n");
      if (!out.accepted) {
        std::cerr << "heez: " << errc_message(Errc::audit_failed) << " (" << errc_name(Errc::audit_failed) << ")\n";
        code = kProtocol;
      }
    } else if (dump->parsed()) {
      std::istringstream log(d->ledger().export_log());
      std::string line, text;
      while (std::getline(log, line)) {
        std::istringstream ls(line);
        std::string id, ch;
        ls >> id >> ch;
        if (channel.empty() || ch == channel) text += line + "\n";
      }
      emit(o, text);
    }
    d->save(o.state);
    return code;
  } catch (const Error& e) {
    std::cerr << "heez: " << errc_message(e.code()) << " (" << e.what() << ")\n";
    return kProtocol;
  } catch (const std::exception& e) {
    std::cerr << "heez: " << e.what() << "\n";
    return kUsage;
  }
}
