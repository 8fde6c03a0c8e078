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

#include <optional>
#include <span>
#include <vector>

#include "heez/algebra/group.hpp"
#include "heez/bytes.hpp"

namespace heez::hfaudit {

using algebra::G1;
using algebra::G2;
using algebra::Scalar;

/// Execution policy for the per-block kernels. `parallel` uses OpenMP when
/// the library was built with it and otherwise runs the serial code.
enum class Exec { serial, parallel };

bool parallel_available() noexcept;
int parallel_threads() noexcept;

/// H(F_i) for every block.
std::vector<G1> hash_blocks(std::span<const Bytes> blocks, Exec exec);

/// phi_i = x * (H_i + v_i * u_m).
std::vector<G1> tag_blocks(std::span<const G1> hashes, std::span<const Scalar> values,
                           const Scalar& x, const G1& u_m, Exec exec);

/// sum_i c_i * P_i.
G1 aggregate(std::span<const G1> points, std::span<const Scalar> coeffs, Exec exec);

/// sum_i c_i * v_i mod q.
Scalar aggregate_scalars(std::span<const Scalar> values, std::span<const Scalar> coeffs);

/// Random-linear-combination check of every tag identity at once:
/// e(sum rho_i phi_i, g) == e(sum rho_i H_i + (sum rho_i v_i) u_m, y).
bool batch_check_tags(std::span<const G1> hashes, std::span<const Scalar> values,
                      std::span<const G1> tags, const G1& u_m, const G2& y,
                      std::span<const Scalar> rho, Exec exec);

/// First index whose tag identity fails, one pairing check per block.
std::optional<std::size_t> find_bad_tag(std::span<const G1> hashes, std::span<const Scalar> values,
                                        std::span<const G1> tags, const G1& u_m, const G2& y,
                                        Exec exec);

}  // namespace heez::hfaudit
