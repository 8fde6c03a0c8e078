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

#include "heez/hfaudit/kernels.hpp"

#include <algorithm>

#ifdef HEEZ_HAVE_OPENMP
#include <omp.h>
#endif

#include "heez/algebra/hash.hpp"
#include "heez/algebra/msm.hpp"
#include "heez/error.hpp"

namespace heez::hfaudit {

namespace {

void require_same(std::size_t a, std::size_t b) {
  if (a != b) throw Error(Errc::invalid_argument, "kernel input sizes differ");
}

bool run_parallel(Exec exec) { return exec == Exec::parallel && parallel_available(); }

bool tag_holds(const G1& h, const Scalar& v, const G1& tag, const G1& u_m, const G2& y) {
  const G1 lhs[2] = {tag, -(h + v * u_m)};
  const G2 rhs[2] = {G2::generator(), y};
  return algebra::multi_pairing(lhs, rhs).is_identity();
}

}  // namespace

bool parallel_available() noexcept {
#ifdef HEEZ_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

int parallel_threads() noexcept {
#ifdef HEEZ_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<G1> hash_blocks(std::span<const Bytes> blocks, Exec exec) {
  const auto n = static_cast<std::ptrdiff_t>(blocks.size());
  std::vector<G1> out(blocks.size());
  if (run_parallel(exec)) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = algebra::hash_to_group(ByteSpan(blocks[i]));
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = algebra::hash_to_group(ByteSpan(blocks[i]));
  }
  return out;
}

std::vector<G1> tag_blocks(std::span<const G1> hashes, std::span<const Scalar> values,
                           const Scalar& x, const G1& u_m, Exec exec) {
  require_same(hashes.size(), values.size());
  const auto n = static_cast<std::ptrdiff_t>(hashes.size());
  std::vector<G1> out(hashes.size());
  if (n == 0) return out;
  // x * v_i * u_m through a fixed-base table, x * H_i generically.
  const algebra::G1FixedBase um_table(u_m);
  auto one = [&](std::ptrdiff_t i) { out[i] = x * hashes[i] + um_table.mul(x * values[i]); };
  if (run_parallel(exec)) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) one(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) one(i);
  }
  return out;
}

G1 aggregate(std::span<const G1> points, std::span<const Scalar> coeffs, Exec exec) {
  require_same(points.size(), coeffs.size());
  if (!run_parallel(exec)) return algebra::msm(points, coeffs);
  const int threads = std::max(1, parallel_threads());
  const std::size_t chunk = (points.size() + threads - 1) / threads;
  std::vector<G1> partial(threads);
#pragma omp parallel for schedule(static, 1)
  for (int t = 0; t < threads; ++t) {
    std::size_t lo = std::min(points.size(), t * chunk);
    std::size_t hi = std::min(points.size(), lo + chunk);
    partial[t] = algebra::msm(points.subspan(lo, hi - lo), coeffs.subspan(lo, hi - lo));
  }
  G1 acc;
  for (auto& p : partial) acc += p;
  return acc;
}

Scalar aggregate_scalars(std::span<const Scalar> values, std::span<const Scalar> coeffs) {
  require_same(values.size(), coeffs.size());
  Scalar acc;
  for (std::size_t i = 0; i < values.size(); ++i) acc += coeffs[i] * values[i];
  return acc;
}

bool batch_check_tags(std::span<const G1> hashes, std::span<const Scalar> values,
                      std::span<const G1> tags, const G1& u_m, const G2& y,
                      std::span<const Scalar> rho, Exec exec) {
  require_same(hashes.size(), values.size());
  require_same(hashes.size(), tags.size());
  require_same(hashes.size(), rho.size());
  G1 sigma = aggregate(tags, rho, exec);
  G1 right = aggregate(hashes, rho, exec) + aggregate_scalars(values, rho) * u_m;
  const G1 lhs[2] = {sigma, -right};
  const G2 rhs[2] = {G2::generator(), y};
  return algebra::multi_pairing(lhs, rhs).is_identity();
}

std::optional<std::size_t> find_bad_tag(std::span<const G1> hashes, std::span<const Scalar> values,
                                        std::span<const G1> tags, const G1& u_m, const G2& y,
                                        Exec exec) {
  require_same(hashes.size(), values.size());
  require_same(hashes.size(), tags.size());
  const auto n = static_cast<std::ptrdiff_t>(hashes.size());
  std::vector<unsigned char> ok(hashes.size(), 1);
  if (run_parallel(exec)) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i) ok[i] = tag_holds(hashes[i], values[i], tags[i], u_m, y);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) ok[i] = tag_holds(hashes[i], values[i], tags[i], u_m, y);
  }
  auto it = std::find(ok.begin(), ok.end(), 0);
  if (it == ok.end()) return std::nullopt;
  return static_cast<std::size_t>(it - ok.begin());
}

}  // namespace heez::hfaudit
