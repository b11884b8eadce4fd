// Copyright 2026 The TIVA Authors.
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
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "tiva/crypto/canonical.h"
#include "tiva/crypto/sign.h"
#include "tiva/identity/identity.h"

namespace tiva::policy {

using crypto::Digest;
using identity::Did;

// Spend within fixed windows floor(now / period).
struct EpochCounter {
  uint64_t epoch = 0;
  uint64_t spent = 0;

  // The counter as seen at `now`: reset when a later window has started.
  EpochCounter At(uint64_t now, uint64_t period) const;
  // spent + amount <= limit without overflow.
  static bool Fits(uint64_t spent, uint64_t amount, uint64_t limit);

  friend bool operator==(const EpochCounter&, const EpochCounter&) = default;
};

struct PolicyRules {
  uint64_t per_period_limit_minor = 0;
  uint64_t period_seconds = 0;
  std::set<std::string> allowed_categories;  // empty: any
  std::set<std::string> allowed_payees;      // empty: any
  std::optional<uint64_t> per_tx_limit_minor;
  std::string currency;

  bool IsValid() const;

  canonical::Value ToCanonical() const;
  static PolicyRules FromCanonical(const canonical::Value& v);

  friend bool operator==(const PolicyRules&, const PolicyRules&) = default;
};

struct PolicyState {
  Digest policy_id;
  PolicyRules rules;
  EpochCounter counter;
  Did bound_agent;
  Did owner;

  uint64_t epoch_index() const { return counter.epoch; }
  uint64_t spent_this_epoch_minor() const { return counter.spent; }

  canonical::Value Snapshot() const;

  friend bool operator==(const PolicyState&, const PolicyState&) = default;
};

// Throws kBadRules or kAgentNotControlled.
PolicyState DeployPolicy(const crypto::KeyPair& owner, const Did& bound_agent,
                         const PolicyRules& rules, uint64_t now,
                         const identity::DidRegistry& dids);
// Same, for an owner whose authorization was checked by the caller.
PolicyState DeployPolicy(const Did& owner, const Did& bound_agent,
                         const PolicyRules& rules, uint64_t now,
                         const identity::DidRegistry& dids);

struct PolicyPayment {
  uint64_t amount_minor = 0;
  std::string payee;
  std::string category;
  std::string currency;
  Did caller;
};

// Checked in this order; the first failure is reported.
enum class PolicyDeny { kCaller, kCurrency, kCategory, kPayee, kPerTx, kPerPeriod };

std::string_view PolicyDenyName(PolicyDeny d);

struct PolicyDecision {
  std::optional<PolicyDeny> deny;
  PolicyState next;  // equals the input state on Deny

  bool authorized() const { return !deny.has_value(); }
};

PolicyDecision Evaluate(const PolicyState& state, const PolicyPayment& p,
                        uint64_t now);

}  // namespace tiva::policy
