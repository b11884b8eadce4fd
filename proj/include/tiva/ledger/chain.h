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

// Single-writer chain simulator hosting the agent wallet contract. One
// event per transaction; logical time is supplied by the caller and must
// not decrease.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "tiva/attestation/attestation.h"
#include "tiva/credential/credential.h"
#include "tiva/identity/identity.h"
#include "tiva/ledger/event.h"
#include "tiva/ledger/transactions.h"
#include "tiva/mandate/mandate.h"
#include "tiva/policy/policy.h"

namespace tiva::ledger {

// Payment rejection reasons in pipeline order.
enum class PaymentReason {
  kUnknownWallet,
  kNonceReplay,
  kBadAgentSignature,
  kCredentialSignature,
  kCredentialController,
  kRevoked,
  kCredentialExpired,
  kAmountOverflow,
  kCredentialLimit,
  kCredentialCurrency,
  kCredentialPayee,
  kCredentialCategory,
  kNoIntentProof,
  kIntentModeMismatch,
  kBadMandateSignature,
  kMandateAgent,
  kMandateExpired,
  kItem,
  kVendor,
  kCurrency,
  kPrice,
  kQuantity,
  kPolicyCaller,
  kPolicyCurrency,
  kPolicyCategory,
  kPolicyPayee,
  kPolicyPerTx,
  kPolicyPerPeriod,
  kAttestationSignature,
  kAttestationEndorsement,
  kAttestationCodeHash,
  kAttestationBinding,
  kAttestationFreshness,
  kAttestationQuorum,
  kInsufficientBalance,
};

std::string_view PaymentReasonName(PaymentReason r);
std::optional<PaymentReason> ParsePaymentReason(std::string_view name);

PaymentReason FromCredentialReject(credential::CredentialReject r);
PaymentReason FromMandateReject(mandate::MandateReject r);
PaymentReason FromPolicyDeny(policy::PolicyDeny d);
PaymentReason FromAttestationReject(attestation::AttestationReject r);

struct WalletState {
  Digest wallet_id;
  Did owner;
  Did agent;
  uint64_t balance_minor = 0;
  credential::DelegationCredential credential;
  WalletConfig config;
  std::optional<policy::PolicyState> policy;
  mandate::MandateConsumption mandate_consumption;
  policy::EpochCounter credential_spend;
  std::set<Digest> nonce_seen;
  uint64_t owner_seq = 0;

  const std::string& currency() const { return config.currency; }
  canonical::Value Snapshot() const;
};

struct Receipt {
  bool accepted = false;
  std::optional<PaymentReason> reason;
  uint64_t height = 0;
  Digest event_hash;
  std::optional<Digest> intent_proof_digest;
};

// Evidence store entry digests. Plaintext mandates are addressed by their
// mandate_id; other evidence by hash("tiva/intent", canonical evidence).
Digest EvidenceDigest(const canonical::Value& evidence);
bool ResolvesTo(const Digest& digest, const canonical::Value& evidence);

class Chain {
 public:
  Chain();

  const std::vector<LedgerEvent>& events() const { return events_; }
  uint64_t now() const { return now_; }
  const identity::DidRegistry& dids() const { return dids_; }
  const identity::RevocationRegistry& revocations() const { return revocations_; }
  const identity::CredentialAnchors& anchors() const { return anchors_; }
  const std::map<Digest, WalletState>& wallets() const { return wallets_; }
  const WalletState* FindWallet(const Digest& wallet_id) const;
  const std::map<Digest, policy::PolicyState>& policies() const { return policies_; }
  // Intent proofs of accepted payments, keyed by their event digest.
  const std::map<Digest, canonical::Value>& evidence() const { return evidence_; }

  // All transaction methods throw kTimeRegression if `now` is earlier than
  // the previous transaction. A throwing call emits no event and changes
  // nothing.

  // Returns false (and emits nothing) for an identical re-registration.
  bool RegisterDid(const identity::DidDocument& doc, uint64_t now);
  // Anchors the credential digest. Throws kBadSignature or
  // kSubjectNotControlled.
  void AnchorCredential(const credential::DelegationCredential& cred, uint64_t now);
  // Throws kUnknownIssuer or kBadSignature. Returns false if already revoked.
  bool Revoke(const RevokeTx& tx, uint64_t now);
  // Throws kBadSignature, kBadRules or kAgentNotControlled.
  Digest DeployPolicy(const PolicyDeploymentTx& tx, uint64_t now);
  // Throws kBadSignature, kBadBinding, kBadConfig or kUnknownPolicy.
  Digest CreateWallet(const CreateWalletTx& tx, uint64_t now);
  // Throws kUnknownWallet, kBadSignature, kStaleSequence or kOverflow.
  void Deposit(const DepositTx& tx, uint64_t now);
  // Throws kUnknownWallet, kBadSignature, kStaleSequence or kBadConfig.
  void UpdateWhitelist(const WhitelistUpdateTx& tx, uint64_t now);
  // Never throws for bad requests; every outcome is a receipt and an event.
  Receipt SubmitPayment(const PaymentRequest& request, uint64_t now);

 private:
  void CheckTime(uint64_t now) const;
  const LedgerEvent& Emit(EventKind kind, canonical::Value payload,
                          std::optional<Digest> intent_proof_digest = {});
  const crypto::PublicKey& OwnerKey(const Did& owner) const;

  uint64_t now_ = 0;
  std::vector<LedgerEvent> events_;
  identity::DidRegistry dids_;
  identity::RevocationRegistry revocations_;
  identity::CredentialAnchors anchors_;
  std::map<Digest, policy::PolicyState> policies_;
  std::map<Digest, WalletState> wallets_;
  std::map<Digest, canonical::Value> evidence_;
};

}  // namespace tiva::ledger
