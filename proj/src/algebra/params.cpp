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

#include "heez/algebra/params.hpp"

namespace heez::algebra {

const SystemParams& SystemParams::bn254() {
  static const SystemParams kParams{"bn254", Fr::kModulus, G1::generator(), G2::generator()};
  return kParams;
}

}  // namespace heez::algebra
