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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace heez::cli_bench {

struct ScenarioConfig {
  std::vector<std::uint32_t> tpa_grid{2, 4, 8, 16};
  std::vector<std::uint32_t> block_grid{16, 64, 256, 512};
  std::vector<std::uint32_t> neighbor_grid{30, 120};
  std::uint32_t repetitions = 20;
  std::uint32_t warmup = 2;
  /// Blocks of the file audited in the TPA and neighbour scenarios.
  std::uint32_t blocks = 64;
  /// TPAs selected in the block and neighbour scenarios.
  std::uint32_t tpas = 2;
  std::uint64_t seed = 1;
  /// Shards independent scenario points across threads.
  bool parallel = false;

  /// Reads the "bench" object of a JSON document; throws invalid_argument.
  static ScenarioConfig from_json(std::string_view text);
};

struct BenchPoint {
  std::string param;
  std::uint64_t value = 0;
  double median_ms = 0;
  double mean_ms = 0;
  std::uint64_t pairings = 0;  // per repetition
  std::uint64_t bits = 0;      // protocol messages per repetition
};

struct BenchReport {
  std::string scenario;
  std::vector<BenchPoint> points;
  /// Published reference figures, reported next to the measurements only.
  std::map<std::string, double> reference;
  std::string environment;
  /// Trend check result for this scenario.
  bool trend_ok = false;

  /// One JSON object per point plus a summary record.
  std::vector<std::string> to_json_lines() const;
};

/// Audit wall time against the number of verifying TPAs; medians must be
/// non-decreasing.
BenchReport bench_pairings_vs_tpas(const ScenarioConfig& config);
/// Audit wall time against the number of challenged blocks (M = n).
BenchReport bench_pairings_vs_blocks(const ScenarioConfig& config);
/// Incomplete-information selection: every neighbour's signed report is
/// verified before selection and audit. time(max grid) > time(min grid).
/// Throws insufficient_candidates for a zero neighbour count.
BenchReport bench_incomplete_info(const ScenarioConfig& config);

struct MessageField {
  std::string message;
  std::string field;
  std::uint64_t bits = 0;
};

/// Field-level log of every protocol message sent in one flow.
struct Transcript {
  std::string flow;
  std::vector<MessageField> fields;

  void record(std::string message, std::string field, std::uint64_t bytes);
};

/// Sum of the recorded canonical-encoding sizes, in bits.
std::uint64_t account_message_bits(const Transcript& flow);

/// Runs one blinded presentation and records its three messages.
Transcript presentation_transcript(std::uint64_t seed);
/// Runs one audit (challenge and proof) with the given TPA count.
Transcript audit_transcript(std::uint64_t seed, std::uint32_t tpas = 1);

/// JSON line for a transcript with its field breakdown.
std::string transcript_json(const Transcript& t, double reference_bits);

/// Compiler, build and thread information.
std::string environment_fingerprint();

inline constexpr double kReferenceTotalCostMs = 76;
inline constexpr double kReferenceIncompleteMs30 = 1100;
inline constexpr double kReferenceIncompleteMs120 = 3100;
inline constexpr double kReferenceCommunicationBits = 1926;

}  // namespace heez::cli_bench
