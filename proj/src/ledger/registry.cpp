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

#include "heez/ledger/registry.hpp"

#include <array>
#include <mutex>

#include "heez/error.hpp"

namespace heez::ledger {

namespace {
constexpr std::array<std::pair<Role, std::string_view>, 7> kRoleNames{{
    {Role::user, "user"},
    {Role::cspt, "cspt"},
    {Role::tpa, "tpa"},
    {Role::iv, "iv"},
    {Role::cp, "cp"},
    {Role::sp, "sp"},
    {Role::admin, "admin"},
}};
}  // namespace

std::string_view role_name(Role role) {
  for (auto& [r, n] : kRoleNames)
    if (r == role) return n;
  return "unknown";
}

std::optional<Role> role_from_name(std::string_view name) {
  for (auto& [r, n] : kRoleNames)
    if (n == name) return r;
  return std::nullopt;
}

IdentityRecord Registry::enroll(std::string id, Role role, Bytes public_keys, bool approved) {
  if (!approved) throw Error(Errc::not_approved, id);
  std::unique_lock lock(mu_);
  auto it = records_.find(id);
  if (it != records_.end()) return it->second;
  IdentityRecord rec{id, role, std::move(public_keys), true};
  records_.emplace(std::move(id), rec);
  return rec;
}

std::optional<IdentityRecord> Registry::lookup(std::string_view id) const {
  std::shared_lock lock(mu_);
  auto it = records_.find(id);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

bool Registry::is_registered(std::string_view id) const {
  std::shared_lock lock(mu_);
  return records_.find(id) != records_.end();
}

bool Registry::has_role(std::string_view id, Role role) const {
  std::shared_lock lock(mu_);
  auto it = records_.find(id);
  return it != records_.end() && it->second.role == role;
}

std::vector<IdentityRecord> Registry::members() const {
  std::shared_lock lock(mu_);
  std::vector<IdentityRecord> out;
  out.reserve(records_.size());
  for (auto& [_, rec] : records_) out.push_back(rec);
  return out;
}

}  // namespace heez::ledger
