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

#include <atomic>
#include <cstdint>

namespace heez::caudit {

/// Single time authority for a simulation: a monotonically increasing tick
/// counter that actors advance explicitly.
class LogicalClock {
 public:
  using Tick = std::uint64_t;

  Tick now() const { return now_.load(std::memory_order_acquire); }
  Tick advance(Tick ticks = 1) { return now_.fetch_add(ticks, std::memory_order_acq_rel) + ticks; }
  /// Moves forward to `t`; never moves backwards.
  void advance_to(Tick t) {
    Tick cur = now();
    while (t > cur && !now_.compare_exchange_weak(cur, t, std::memory_order_acq_rel)) {
    }
  }

 private:
  std::atomic<Tick> now_{0};
};

}  // namespace heez::caudit
