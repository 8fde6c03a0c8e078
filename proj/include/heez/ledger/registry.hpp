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

#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "heez/bytes.hpp"

namespace heez::ledger {

enum class Role { user, cspt, tpa, iv, cp, sp, admin };

std::string_view role_name(Role role);
std::optional<Role> role_from_name(std::string_view name);

struct IdentityRecord {
  std::string id;
  Role role = Role::user;
  /// Opaque public-key material published with the identity.
  Bytes public_keys;
  bool approved = false;

  friend bool operator==(const IdentityRecord&, const IdentityRecord&) = default;
};

/// Certificate-authority style enrolment. Only admin-approved participants
/// are enrolled; enrolled identities are visible to every member.
class Registry {
 public:
  /// Throws Error(not_approved) when `approved` is false. Re-enrolling an
  /// existing id returns the original record unchanged.
  IdentityRecord enroll(std::string id, Role role, Bytes public_keys, bool approved);

  std::optional<IdentityRecord> lookup(std::string_view id) const;
  bool is_registered(std::string_view id) const;
  bool has_role(std::string_view id, Role role) const;
  std::vector<IdentityRecord> members() const;

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, IdentityRecord, std::less<>> records_;
};

}  // namespace heez::ledger
