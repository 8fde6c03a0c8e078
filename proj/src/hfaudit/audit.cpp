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
#include <numeric>
#include <set>

#include "heez/algebra/hash.hpp"
#include "heez/error.hpp"
#include "heez/hfaudit/hfaudit.hpp"

namespace heez::hfaudit {

namespace {

algebra::Digest256 prf(ByteSpan key, std::string_view label, std::uint32_t a, std::uint32_t b = 0) {
  ByteWriter w;
  w.raw(to_bytes_view(label));
  w.u32(a);
  w.u32(b);
  return algebra::hmac_sha256(key, w.bytes());
}

std::array<std::uint8_t, 32> seed_digest(std::string_view label, std::uint64_t seed) {
  ByteWriter w;
  w.raw(to_bytes_view(label));
  w.u64(seed);
  return algebra::sha256(w.bytes());
}

Nonce tpa_nonce(const ChallengeSeeds& seeds, std::string_view tpa) {
  ByteWriter w;
  w.raw(to_bytes_view("nonce"));
  w.raw(to_bytes_view(tpa));
  auto d = algebra::hmac_sha256(seeds.sd_ra, w.bytes());
  Nonce n{};
  std::copy_n(d.begin(), n.size(), n.begin());
  return n;
}

void derive(AuditChallenge& c) {
  c.indices.clear();
  c.coeffs.clear();
  std::set<std::uint32_t> seen;
  for (std::uint32_t ctr = 0; c.indices.size() < c.M; ++ctr) {
    auto d = prf(c.seeds.sd_bl, "idx", ctr);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | d[i];
    auto idx = static_cast<std::uint32_t>(v % c.n);
    if (seen.insert(idx).second) c.indices.push_back(idx);
  }
  for (std::uint32_t i = 0; i < c.M; ++i) {
    for (std::uint32_t attempt = 0;; ++attempt) {
      Scalar nu = Scalar::from_bytes_reduce(prf(c.seeds.sd_ra, "nu", i, attempt));
      if (!nu.is_zero()) {
        c.coeffs.push_back(nu);
        break;
      }
    }
  }
}

}  // namespace

ChallengeSeeds ChallengeSeeds::from_seed(std::uint64_t seed) {
  return {seed_digest("HEEZ-SDBL-v1", seed), seed_digest("HEEZ-SDRA-v1", seed)};
}

ChallengeSeeds ChallengeSeeds::from_rng(Rng& rng) {
  ChallengeSeeds s;
  rng.fill(s.sd_bl);
  rng.fill(s.sd_ra);
  return s;
}

AuditChallenge gen_challenge(std::uint32_t M, std::uint32_t n, const ChallengeSeeds& seeds,
                             std::span<const std::string> tpa_set, TxId iu_m) {
  if (M == 0) throw Error(Errc::invalid_argument, "empty challenge");
  if (M > n) throw Error(Errc::challenge_too_large, std::to_string(M) + " > " + std::to_string(n));
  AuditChallenge c;
  c.M = M;
  c.n = n;
  c.seeds = seeds;
  c.iu_m = iu_m;
  for (auto& t : tpa_set) c.nonces.emplace_back(t, tpa_nonce(seeds, t));
  derive(c);
  return c;
}

Bytes AuditChallenge::to_bytes() const {
  ByteWriter w;
  w.u32(M);
  w.u32(n);
  w.raw(seeds.sd_bl);
  w.raw(seeds.sd_ra);
  w.u64(iu_m);
  w.u32(static_cast<std::uint32_t>(nonces.size()));
  for (auto& [id, nonce] : nonces) {
    w.blob(to_bytes_view(id));
    w.raw(nonce);
  }
  return std::move(w).take();
}

AuditChallenge AuditChallenge::from_bytes(ByteSpan in) {
  ByteReader r(in);
  std::uint32_t M = r.u32();
  std::uint32_t n = r.u32();
  ChallengeSeeds seeds;
  auto bl = r.raw(32);
  std::copy(bl.begin(), bl.end(), seeds.sd_bl.begin());
  auto ra = r.raw(32);
  std::copy(ra.begin(), ra.end(), seeds.sd_ra.begin());
  TxId iu_m = r.u64();
  std::uint32_t count = r.u32();
  std::vector<std::string> ids;
  std::vector<Nonce> sent;
  for (std::uint32_t i = 0; i < count; ++i) {
    Bytes id = r.blob();
    ids.emplace_back(id.begin(), id.end());
    auto nb = r.raw(16);
    Nonce nonce{};
    std::copy(nb.begin(), nb.end(), nonce.begin());
    sent.push_back(nonce);
  }
  r.expect_done();
  if (M == 0 || M > n) throw Error(Errc::invalid_encoding, "challenge size");
  AuditChallenge c = gen_challenge(M, n, seeds, ids, iu_m);
  for (std::size_t i = 0; i < sent.size(); ++i)
    if (c.nonces[i].second != sent[i]) throw Error(Errc::invalid_encoding, "challenge nonce");
  return c;
}

Bytes AuditProof::to_bytes() const {
  ByteWriter w;
  w.raw(sigma.to_bytes());
  w.raw(mu.to_bytes());
  return std::move(w).take();
}

AuditProof AuditProof::from_bytes(ByteSpan in) {
  if (in.size() != kEncodedSize) throw Error(Errc::invalid_encoding, "proof length");
  return {G1::from_bytes(in.first(G1::kEncodedSize)), Scalar::from_bytes(in.subspan(G1::kEncodedSize))};
}

AuditProof gen_proof(const AuditChallenge& challenge, const FileBlocks& blocks,
                     std::span<const G1> tags, Exec exec) {
  std::vector<G1> phis;
  std::vector<Scalar> values;
  phis.reserve(challenge.M);
  values.reserve(challenge.M);
  for (std::uint32_t idx : challenge.indices) {
    if (idx >= blocks.n() || idx >= tags.size()) throw Error(Errc::missing_block, std::to_string(idx));
    phis.push_back(tags[idx]);
    values.push_back(blocks.values[idx]);
  }
  return {aggregate(phis, challenge.coeffs, exec), aggregate_scalars(values, challenge.coeffs)};
}

bool verify_proof(const AuditChallenge& challenge, const AuditProof& proof, const AuditPublic& pub,
                  Exec exec) {
  if (pub.hashes.size() != challenge.n) return false;
  std::vector<G1> hs;
  hs.reserve(challenge.M);
  for (std::uint32_t idx : challenge.indices) hs.push_back(pub.hashes[idx]);
  G1 right = aggregate(hs, challenge.coeffs, exec) + proof.mu * pub.u_m;
  const G1 lhs[2] = {proof.sigma, -right};
  const G2 rhs[2] = {pub.g, pub.y};
  return algebra::multi_pairing(lhs, rhs).is_identity();
}

AuditAssignment select_tpas(std::span<const TpaCandidate> candidates, SelectionMode mode,
                            std::size_t k, Rng& rng) {
  if (k == 0 || k > candidates.size())
    throw Error(Errc::insufficient_candidates,
                std::to_string(k) + " of " + std::to_string(candidates.size()));
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  if (mode == SelectionMode::complete) {
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (candidates[a].latency_ms != candidates[b].latency_ms)
        return candidates[a].latency_ms < candidates[b].latency_ms;
      return candidates[a].id < candidates[b].id;
    });
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t j = i + rng.uniform(order.size() - i);
      std::swap(order[i], order[j]);
    }
  }
  AuditAssignment a;
  for (std::size_t i = 0; i < k; ++i) a.selected.push_back(candidates[order[i]].id);
  const std::size_t dt = (k + 1) / 2;
  a.DT.assign(a.selected.begin(), a.selected.begin() + dt);
  a.LT.assign(a.selected.begin() + dt, a.selected.end());
  if (a.LT.empty()) a.LT = a.DT;
  a.DTid = rng.next_u64();
  a.LTid = rng.next_u64();
  return a;
}

void run_verification(AuditAssignment& assignment, const AuditChallenge& challenge,
                      const AuditProof& proof, const AuditPublic& pub, Exec exec) {
  auto all_accept = [&](const std::vector<std::string>& set) {
    bool ok = !set.empty();
    for (std::size_t i = 0; i < set.size(); ++i) ok = verify_proof(challenge, proof, pub, exec) && ok;
    return ok;
  };
  assignment.VoDT = all_accept(assignment.DT);
  assignment.VoLT = all_accept(assignment.LT);
}

}  // namespace heez::hfaudit
