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

#include "tiva/policy/policy.h"

#include <algorithm>

#include "tiva/common/error.h"
#include "tiva/credential/credential.h"

namespace tiva::policy {

EpochCounter EpochCounter::At(uint64_t now, uint64_t period) const {
  const uint64_t current = now / period;
  if (current > epoch) return {current, 0};
  return *this;
}

bool EpochCounter::Fits(uint64_t spent, uint64_t amount, uint64_t limit) {
  return spent <= limit && amount <= limit - spent;
}

bool PolicyRules::IsValid() const {
  return period_seconds >= 1 && credential::IsCurrencyCode(currency) &&
         std::none_of(allowed_categories.begin(), allowed_categories.end(),
                      [](const std::string& c) {
                        return c.empty() ||
                               std::any_of(c.begin(), c.end(), [](char ch) {
                                 return ch >= 'A' && ch <= 'Z';
                               });
                      });
}

canonical::Value PolicyRules::ToCanonical() const {
  canonical::Value v = {
      {"allowed_categories", canonical::StringSet(allowed_categories)},
      {"allowed_payees", canonical::StringSet(allowed_payees)},
      {"currency", currency},
      {"per_period_limit_minor", per_period_limit_minor},
      {"period_seconds", period_seconds}};
  if (per_tx_limit_minor) v["per_tx_limit_minor"] = *per_tx_limit_minor;
  return v;
}

PolicyRules PolicyRules::FromCanonical(const canonical::Value& v) {
  PolicyRules r;
  r.allowed_categories = canonical::GetStringSet(v, "allowed_categories");
  r.allowed_payees = canonical::GetStringSet(v, "allowed_payees");
  r.currency = canonical::GetString(v, "currency");
  r.per_period_limit_minor = canonical::GetUint(v, "per_period_limit_minor");
  r.period_seconds = canonical::GetUint(v, "period_seconds");
  if (canonical::Has(v, "per_tx_limit_minor")) {
    r.per_tx_limit_minor = canonical::GetUint(v, "per_tx_limit_minor");
  }
  return r;
}

canonical::Value PolicyState::Snapshot() const {
  return {{"bound_agent", bound_agent.ToString()},
          {"epoch_index", counter.epoch},
          {"owner", owner.ToString()},
          {"policy_id", policy_id.ToHex()},
          {"rules", rules.ToCanonical()},
          {"spent_this_epoch_minor", counter.spent}};
}

PolicyState DeployPolicy(const crypto::KeyPair& owner, const Did& bound_agent,
                         const PolicyRules& rules, uint64_t now,
                         const identity::DidRegistry& dids) {
  return DeployPolicy(Did::FromPublicKey(owner.public_key()), bound_agent,
                      rules, now, dids);
}

PolicyState DeployPolicy(const Did& owner_did, const Did& bound_agent,
                         const PolicyRules& rules, uint64_t now,
                         const identity::DidRegistry& dids) {
  if (!rules.IsValid()) throw Error(ErrorCode::kBadRules, "");
  if (!dids.Controls(owner_did, bound_agent)) {
    throw Error(ErrorCode::kAgentNotControlled, bound_agent.ToString());
  }
  PolicyState s;
  s.rules = rules;
  s.counter = {now / rules.period_seconds, 0};
  s.bound_agent = bound_agent;
  s.owner = owner_did;
  s.policy_id = crypto::Hash(
      "tiva/policy", canonical::Encode({{"bound_agent", bound_agent.ToString()},
                                        {"deployed_at", now},
                                        {"owner", owner_did.ToString()},
                                        {"rules", rules.ToCanonical()}}));
  return s;
}

std::string_view PolicyDenyName(PolicyDeny d) {
  switch (d) {
    case PolicyDeny::kCaller: return "Caller";
    case PolicyDeny::kCurrency: return "Currency";
    case PolicyDeny::kCategory: return "Category";
    case PolicyDeny::kPayee: return "Payee";
    case PolicyDeny::kPerTx: return "PerTx";
    case PolicyDeny::kPerPeriod: return "PerPeriod";
  }
  return "Unknown";
}

PolicyDecision Evaluate(const PolicyState& state, const PolicyPayment& p,
                        uint64_t now) {
  const PolicyRules& r = state.rules;
  PolicyState next = state;
  next.counter = state.counter.At(now, r.period_seconds);

  auto deny = [&](PolicyDeny d) { return PolicyDecision{d, state}; };
  if (p.caller != state.bound_agent) return deny(PolicyDeny::kCaller);
  if (p.currency != r.currency) return deny(PolicyDeny::kCurrency);
  if (!r.allowed_categories.empty() && !r.allowed_categories.contains(p.category)) {
    return deny(PolicyDeny::kCategory);
  }
  if (!r.allowed_payees.empty() && !r.allowed_payees.contains(p.payee)) {
    return deny(PolicyDeny::kPayee);
  }
  if (r.per_tx_limit_minor && p.amount_minor > *r.per_tx_limit_minor) {
    return deny(PolicyDeny::kPerTx);
  }
  if (!EpochCounter::Fits(next.counter.spent, p.amount_minor,
                          r.per_period_limit_minor)) {
    return deny(PolicyDeny::kPerPeriod);
  }
  next.counter.spent += p.amount_minor;
  return {std::nullopt, next};
}

}  // namespace tiva::policy
