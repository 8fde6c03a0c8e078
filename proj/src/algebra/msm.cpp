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

#include "heez/algebra/msm.hpp"

#include <algorithm>
#include <cmath>

#include "heez/error.hpp"

namespace heez::algebra {

namespace {

constexpr std::size_t kScalarBits = 254;

unsigned window_bits(std::size_t n) {
  int c = static_cast<int>(std::log(static_cast<double>(n))) + 2;
  return static_cast<unsigned>(std::clamp(c, 2, 16));
}

unsigned extract(const U256& k, std::size_t lo, unsigned width) {
  unsigned v = 0;
  for (unsigned b = 0; b < width; ++b) {
    std::size_t bit = lo + b;
    if (bit < 256 && k.bit(bit)) v |= 1U << b;
  }
  return v;
}

}  // namespace

G1 msm_naive(std::span<const G1> points, std::span<const Scalar> scalars) {
  if (points.size() != scalars.size()) throw Error(Errc::invalid_argument, "msm size mismatch");
  G1 acc;
  for (std::size_t i = 0; i < points.size(); ++i) acc += scalars[i] * points[i];
  return acc;
}

G1 msm(std::span<const G1> points, std::span<const Scalar> scalars) {
  if (points.size() != scalars.size()) throw Error(Errc::invalid_argument, "msm size mismatch");
  const std::size_t n = points.size();
  if (n < 8) return msm_naive(points, scalars);

  std::vector<U256> ks(n);
  for (std::size_t i = 0; i < n; ++i) ks[i] = scalars[i].to_u256();
  const unsigned c = window_bits(n);
  const std::size_t windows = (kScalarBits + c - 1) / c;
  std::vector<G1Point> buckets(std::size_t{1} << c);

  G1Point acc;
  for (std::size_t w = windows; w-- > 0;) {
    for (unsigned d = 0; d < c; ++d) acc = acc.dbl();
    std::fill(buckets.begin(), buckets.end(), G1Point());
    for (std::size_t i = 0; i < n; ++i) {
      unsigned idx = extract(ks[i], w * c, c);
      if (idx != 0) buckets[idx] += points[i].point();
    }
    G1Point running, sum;
    for (std::size_t j = buckets.size() - 1; j >= 1; --j) {
      running += buckets[j];
      sum += running;
    }
    acc += sum;
  }
  return G1(acc);
}

G1FixedBase::G1FixedBase(const G1& base) : base_(base), rows_(32) {
  G1Point row_base = base.point();
  for (auto& row : rows_) {
    row[0] = G1Point();
    for (std::size_t j = 1; j < 256; ++j) row[j] = row[j - 1] + row_base;
    row_base = row[255] + row_base;
  }
}

G1 G1FixedBase::mul(const Scalar& k) const {
  auto bytes = k.to_bytes();  // big-endian
  G1Point acc;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::uint8_t b = bytes[31 - i];
    if (b != 0) acc += rows_[i][b];
  }
  return G1(acc);
}

}  // namespace heez::algebra
