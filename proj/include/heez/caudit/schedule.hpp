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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "heez/caudit/clock.hpp"

namespace heez::caudit {

using Tick = LogicalClock::Tick;

struct CauditConfig {
  Tick timeout_ticks = 100;
  Tick slot_width_ticks = 10;

  /// Reads the "caudit" object of a JSON document; absent keys keep their
  /// defaults. Throws invalid_argument on malformed input or zero values.
  static CauditConfig from_json(std::string_view text);
};

enum class EventKind { request, response, other };

struct TimedEvent {
  std::uint64_t id = 0;
  std::string actor;
  EventKind kind = EventKind::other;
  Tick time = 0;
  Tick deadline = 0;

  friend bool operator==(const TimedEvent&, const TimedEvent&) = default;
};

/// Stable sort by (time, id).
std::vector<TimedEvent> order_events(std::vector<TimedEvent> events);

enum class SlotReason { timeout, request };

struct AuditSlot {
  std::uint64_t slot_id = 0;
  Tick window_start = 0;
  Tick window_end = 0;
  std::string subject;
  SlotReason reason = SlotReason::timeout;

  friend bool operator==(const AuditSlot&, const AuditSlot&) = default;
};

/// Pure deadline rule: the subject is on time if a response event from it
/// arrives at or before start + timeout. Otherwise the slot opens exactly at
/// the deadline and lasts slot_width_ticks.
std::optional<AuditSlot> watch_deadline(std::string_view subject, Tick start, Tick timeout,
                                        std::span<const TimedEvent> events, Tick slot_width,
                                        std::uint64_t slot_id);

/// Single-threaded event loop over the shared clock. Actors log events;
/// advancing the clock fires the slots of expired watches in deadline order.
class Scheduler {
 public:
  Scheduler(LogicalClock& clock, CauditConfig config) : clock_(clock), config_(config) {}

  /// Starts a watch with the configured (or explicit) timeout; returns its deadline.
  Tick watch(std::string subject, std::optional<Tick> timeout = std::nullopt);
  void respond(std::string_view actor);
  std::uint64_t log(std::string actor, EventKind kind);

  /// Explicit audit request: a slot starting now.
  AuditSlot request_slot(std::string subject);

  /// Advances the clock and returns slots whose deadlines have passed.
  std::vector<AuditSlot> advance(Tick ticks);

  const std::vector<TimedEvent>& events() const { return events_; }
  const std::vector<AuditSlot>& slots() const { return slots_; }
  const CauditConfig& config() const { return config_; }

 private:
  struct Watch {
    std::string subject;
    Tick start;
    Tick timeout;
  };

  LogicalClock& clock_;
  CauditConfig config_;
  std::vector<TimedEvent> events_;
  std::vector<Watch> pending_;
  std::vector<AuditSlot> slots_;
  std::uint64_t next_event_ = 1;
  std::uint64_t next_slot_ = 1;
};

}  // namespace heez::caudit
