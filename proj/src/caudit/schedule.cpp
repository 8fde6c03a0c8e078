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

#include "heez/caudit/schedule.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

#include "heez/error.hpp"

namespace heez::caudit {

CauditConfig CauditConfig::from_json(std::string_view text) {
  CauditConfig cfg;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_argument, std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw Error(Errc::invalid_argument, "config: expected an object");
  if (!doc.contains("caudit")) return cfg;
  const auto& c = doc["caudit"];
  auto read = [&](const char* key, Tick& out) {
    if (!c.contains(key)) return;
    if (!c[key].is_number_unsigned() || c[key].get<Tick>() == 0)
      throw Error(Errc::invalid_argument, std::string("config: caudit.") + key + " must be a positive integer");
    out = c[key].get<Tick>();
  };
  read("timeout_ticks", cfg.timeout_ticks);
  read("slot_width_ticks", cfg.slot_width_ticks);
  return cfg;
}

std::vector<TimedEvent> order_events(std::vector<TimedEvent> events) {
  std::stable_sort(events.begin(), events.end(), [](const TimedEvent& a, const TimedEvent& b) {
    return a.time != b.time ? a.time < b.time : a.id < b.id;
  });
  return events;
}

std::optional<AuditSlot> watch_deadline(std::string_view subject, Tick start, Tick timeout,
                                        std::span<const TimedEvent> events, Tick slot_width,
                                        std::uint64_t slot_id) {
  if (timeout == 0) throw Error(Errc::invalid_argument, "timeout must be positive");
  const Tick deadline = start + timeout;
  for (auto& ev : events) {
    if (ev.kind == EventKind::response && ev.actor == subject && ev.time >= start && ev.time <= deadline)
      return std::nullopt;
  }
  return AuditSlot{slot_id, deadline, deadline + slot_width, std::string(subject), SlotReason::timeout};
}

Tick Scheduler::watch(std::string subject, std::optional<Tick> timeout) {
  Tick t = timeout.value_or(config_.timeout_ticks);
  if (t == 0) throw Error(Errc::invalid_argument, "timeout must be positive");
  log(subject, EventKind::request);
  pending_.push_back({std::move(subject), clock_.now(), t});
  return clock_.now() + t;
}

void Scheduler::respond(std::string_view actor) { log(std::string(actor), EventKind::response); }

std::uint64_t Scheduler::log(std::string actor, EventKind kind) {
  TimedEvent ev{next_event_++, std::move(actor), kind, clock_.now(), 0};
  events_.push_back(ev);
  return ev.id;
}

AuditSlot Scheduler::request_slot(std::string subject) {
  Tick now = clock_.now();
  AuditSlot slot{next_slot_++, now, now + config_.slot_width_ticks, std::move(subject), SlotReason::request};
  slots_.push_back(slot);
  return slot;
}

std::vector<AuditSlot> Scheduler::advance(Tick ticks) {
  clock_.advance(ticks);
  const Tick now = clock_.now();
  std::vector<Watch> expired;
  std::erase_if(pending_, [&](const Watch& w) {
    if (w.start + w.timeout >= now) return false;  // response still possible at the deadline tick
    expired.push_back(w);
    return true;
  });
  std::stable_sort(expired.begin(), expired.end(),
                   [](const Watch& a, const Watch& b) { return a.start + a.timeout < b.start + b.timeout; });
  std::vector<AuditSlot> fired;
  for (auto& w : expired) {
    auto slot = watch_deadline(w.subject, w.start, w.timeout, events_, config_.slot_width_ticks, next_slot_);
    if (!slot) continue;
    ++next_slot_;
    slots_.push_back(*slot);
    fired.push_back(*slot);
  }
  return fired;
}

}  // namespace heez::caudit
