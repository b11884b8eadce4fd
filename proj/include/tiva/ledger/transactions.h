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

// Signed transactions accepted by the chain simulator.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tiva/attestation/attestation.h"
#include "tiva/credential/credential.h"
#include "tiva/crypto/canonical.h"
#include "tiva/crypto/sign.h"
#include "tiva/identity/identity.h"
#include "tiva/mandate/mandate.h"
#include "tiva/policy/policy.h"
#include "tiva/zk/range_proof.h"

namespace tiva::ledger {

using crypto::Digest;
using crypto::Signature;
using identity::Did;

enum class IntentMode { kPlaintextMandate, kZkMandate, kPolicy };

std::string_view IntentModeName(IntentMode mode);

struct WalletConfig {
  std::string currency;
  bool zk_mode = false;
  std::optional<Digest> policy_id;
  bool allow_mandate_override = false;
  std::optional<attestation::AttestationPolicy> attestation;

  IntentMode mode() const;
  // Rejects zk_mode with a policy, the override flag without a policy, and
  // invalid attestation policies.
  bool IsValid() const;

  canonical::Value ToCanonical() const;
  static WalletConfig FromCanonical(const canonical::Value& v);

  friend bool operator==(const WalletConfig&, const WalletConfig&) = default;
};

struct CreateWalletTx {
  Did owner;
  Did agent;
  credential::DelegationCredential credential;
  WalletConfig config;
  Signature signature;  // owner

  canonical::Value Body() const;
  static CreateWalletTx Sign(const crypto::KeyPair& owner, const Did& agent,
                             const credential::DelegationCredential& credential,
                             const WalletConfig& config);
  canonical::Value ToCanonical() const;
  static CreateWalletTx FromCanonical(const canonical::Value& v);
};

// `seq` is the wallet's owner sequence number, which makes every owner
// transaction single-use.
struct DepositTx {
  Digest wallet_id;
  uint64_t amount_minor = 0;
  uint64_t seq = 0;
  Signature signature;  // owner

  canonical::Value Body() const;
  static DepositTx Sign(const crypto::KeyPair& owner, const Digest& wallet_id,
                        uint64_t amount_minor, uint64_t seq);
};

struct WhitelistUpdateTx {
  Digest wallet_id;
  std::set<Digest> code_hashes;
  uint64_t seq = 0;
  Signature signature;  // owner

  canonical::Value Body() const;
  static WhitelistUpdateTx Sign(const crypto::KeyPair& owner,
                                const Digest& wallet_id,
                                const std::set<Digest>& code_hashes,
                                uint64_t seq);
};

struct PolicyDeploymentTx {
  Did owner;
  Did bound_agent;
  policy::PolicyRules rules;
  Signature signature;  // owner

  canonical::Value Body() const;
  static PolicyDeploymentTx Sign(const crypto::KeyPair& owner,
                                 const Did& bound_agent,
                                 const policy::PolicyRules& rules);
};

struct RevokeTx {
  Digest credential_id;
  Signature signature;  // issuer, over RevocationRegistry::RevocationMessage

  static RevokeTx Sign(const crypto::KeyPair& issuer, const Digest& credential_id);
  canonical::Value ToCanonical() const;
  static RevokeTx FromCanonical(const canonical::Value& v);
};

struct IntentProof {
  enum class Kind { kNone, kMandate, kPolicy };

  Kind kind = Kind::kNone;
  std::optional<mandate::IntentMandate> mandate;
  std::optional<zk::RangeProof> price_proof;  // zk mandates only

  static IntentProof None() { return {}; }
  static IntentProof Policy() { return {Kind::kPolicy, {}, {}}; }
  static IntentProof Mandate(const mandate::IntentMandate& m,
                             std::optional<zk::RangeProof> proof = {}) {
    return {Kind::kMandate, m, std::move(proof)};
  }

  canonical::Value ToCanonical() const;
  static IntentProof FromCanonical(const canonical::Value& v);
};

struct PaymentRequest {
  Digest wallet_id;
  Did agent;
  std::string payee;
  std::string item_id;
  uint64_t unit_price_minor = 0;
  uint64_t quantity = 0;
  std::string category;
  std::string currency;
  Digest nonce;
  IntentProof intent_proof;
  std::vector<attestation::AttestationQuote> quotes;  // attest Digest()
  Signature agent_signature;

  canonical::Value Body() const;
  // hash("tiva/payment", canonical body); quotes bind to this value.
  Digest ComputeDigest() const;
  void SignWith(const crypto::KeyPair& agent);

  canonical::Value ToCanonical() const;
  static PaymentRequest FromCanonical(const canonical::Value& v);
};

}  // namespace tiva::ledger
