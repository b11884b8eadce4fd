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

#include "tiva/ledger/chain.h"

#include <array>

#include "tiva/common/error.h"

namespace tiva::ledger {

namespace {

constexpr std::array<std::string_view, 35> kReasonNames = {
    "UnknownWallet",          "NonceReplay",
    "BadAgentSignature",      "CredentialSignature",
    "CredentialController",   "Revoked",
    "CredentialExpired",      "AmountOverflow",
    "CredentialLimit",        "CredentialCurrency",
    "CredentialPayee",        "CredentialCategory",
    "NoIntentProof",          "IntentModeMismatch",
    "BadMandateSignature",    "MandateAgent",
    "MandateExpired",         "Item",
    "Vendor",                 "Currency",
    "Price",                  "Quantity",
    "PolicyCaller",           "PolicyCurrency",
    "PolicyCategory",         "PolicyPayee",
    "PolicyPerTx",            "PolicyPerPeriod",
    "AttestationSignature",   "AttestationEndorsement",
    "AttestationCodeHash",    "AttestationBinding",
    "AttestationFreshness",   "AttestationQuorum",
    "InsufficientBalance"};

canonical::Value DigestList(const std::set<Digest>& items) {
  canonical::Value arr = canonical::Value::array();
  for (const auto& d : items) arr.push_back(d.ToHex());
  return arr;
}

}  // namespace

std::string_view PaymentReasonName(PaymentReason r) {
  return kReasonNames[static_cast<size_t>(r)];
}

std::optional<PaymentReason> ParsePaymentReason(std::string_view name) {
  for (size_t i = 0; i < kReasonNames.size(); ++i) {
    if (kReasonNames[i] == name) return static_cast<PaymentReason>(i);
  }
  return std::nullopt;
}

PaymentReason FromCredentialReject(credential::CredentialReject r) {
  using credential::CredentialReject;
  switch (r) {
    case CredentialReject::kBadSignature: return PaymentReason::kCredentialSignature;
    case CredentialReject::kController: return PaymentReason::kCredentialController;
    case CredentialReject::kRevoked: return PaymentReason::kRevoked;
    case CredentialReject::kExpired: return PaymentReason::kCredentialExpired;
  }
  return PaymentReason::kCredentialSignature;
}

PaymentReason FromMandateReject(mandate::MandateReject r) {
  using mandate::MandateReject;
  switch (r) {
    case MandateReject::kExpired: return PaymentReason::kMandateExpired;
    case MandateReject::kItem: return PaymentReason::kItem;
    case MandateReject::kVendor: return PaymentReason::kVendor;
    case MandateReject::kCurrency: return PaymentReason::kCurrency;
    case MandateReject::kPrice: return PaymentReason::kPrice;
    case MandateReject::kQuantity: return PaymentReason::kQuantity;
  }
  return PaymentReason::kPrice;
}

PaymentReason FromPolicyDeny(policy::PolicyDeny d) {
  return static_cast<PaymentReason>(
      static_cast<int>(PaymentReason::kPolicyCaller) + static_cast<int>(d));
}

PaymentReason FromAttestationReject(attestation::AttestationReject r) {
  return static_cast<PaymentReason>(
      static_cast<int>(PaymentReason::kAttestationSignature) + static_cast<int>(r));
}

canonical::Value WalletState::Snapshot() const {
  canonical::Value nonces = DigestList(nonce_seen);
  canonical::Value v = {{"agent", agent.ToString()},
                        {"balance_minor", balance_minor},
                        {"config", config.ToCanonical()},
                        {"credential_epoch", credential_spend.epoch},
                        {"credential_id", credential.credential_id.ToHex()},
                        {"credential_spent", credential_spend.spent},
                        {"mandate_consumption", mandate_consumption.Snapshot()},
                        {"nonce_seen", nonces},
                        {"owner", owner.ToString()},
                        {"owner_seq", owner_seq},
                        {"wallet_id", wallet_id.ToHex()}};
  if (policy) v["policy"] = policy->Snapshot();
  return v;
}

Digest EvidenceDigest(const canonical::Value& evidence) {
  if (canonical::Has(evidence, "kind") && evidence["kind"] == "mandate") {
    return mandate::IntentMandate::FromCanonical(evidence["mandate"]).ComputeId();
  }
  return crypto::Hash("tiva/intent", canonical::Encode(evidence));
}

bool ResolvesTo(const Digest& digest, const canonical::Value& evidence) {
  try {
    if (EvidenceDigest(evidence) != digest) return false;
    if (evidence["kind"] == "mandate") {
      return mandate::IntentMandate::FromCanonical(evidence["mandate"]).mandate_id ==
             digest;
    }
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

Chain::Chain() {
  Emit(EventKind::kGenesis, {{"chain", "tiva"}, {"version", 1}});
}

const WalletState* Chain::FindWallet(const Digest& wallet_id) const {
  auto it = wallets_.find(wallet_id);
  return it == wallets_.end() ? nullptr : &it->second;
}

void Chain::CheckTime(uint64_t now) const {
  if (now < now_) {
    throw Error(ErrorCode::kTimeRegression,
                std::to_string(now) + " < " + std::to_string(now_));
  }
}

const LedgerEvent& Chain::Emit(EventKind kind, canonical::Value payload,
                               std::optional<Digest> intent_proof_digest) {
  const Digest prev = events_.empty() ? Digest{} : events_.back().event_hash;
  events_.push_back(LedgerEvent::Make(events_.size(), kind, std::move(payload),
                                      intent_proof_digest, prev));
  return events_.back();
}

const crypto::PublicKey& Chain::OwnerKey(const Did& owner) const {
  const identity::DidDocument* doc = dids_.Find(owner);
  if (doc == nullptr || !doc->IsSelfControlled()) {
    throw Error(ErrorCode::kBadSignature, "signer is not a registered user");
  }
  return doc->public_key;
}

bool Chain::RegisterDid(const identity::DidDocument& doc, uint64_t now) {
  CheckTime(now);
  if (!dids_.Register(doc)) return false;
  now_ = now;
  Emit(EventKind::kRegistered, {{"at", now}, {"document", doc.ToCanonical()}});
  return true;
}

void Chain::AnchorCredential(const credential::DelegationCredential& cred,
                             uint64_t now) {
  CheckTime(now);
  const identity::DidDocument* issuer = dids_.Find(cred.issuer);
  const Bytes body = canonical::Encode(cred.Body());
  if (issuer == nullptr || cred.ComputeId() != cred.credential_id ||
      !crypto::IsValidSignature(issuer->public_key, body, cred.signature)) {
    throw Error(ErrorCode::kBadSignature, "credential signature");
  }
  if (!dids_.Controls(cred.issuer, cred.subject)) {
    throw Error(ErrorCode::kSubjectNotControlled, cred.subject.ToString());
  }
  if (!anchors_.Anchor(cred.credential_id, cred.issuer)) return;
  now_ = now;
  Emit(EventKind::kIssued, {{"at", now},
                            {"credential_id", cred.credential_id.ToHex()},
                            {"issuer", cred.issuer.ToString()},
                            {"subject", cred.subject.ToString()}});
}

bool Chain::Revoke(const RevokeTx& tx, uint64_t now) {
  CheckTime(now);
  const uint64_t height = events_.size();
  if (!revocations_.Revoke(tx.signature, tx.credential_id, anchors_, dids_,
                           height)) {
    return false;
  }
  now_ = now;
  Emit(EventKind::kRevoked,
       {{"at", now},
        {"credential_id", tx.credential_id.ToHex()},
        {"issuer", anchors_.IssuerOf(tx.credential_id)->ToString()}});
  return true;
}

Digest Chain::DeployPolicy(const PolicyDeploymentTx& tx, uint64_t now) {
  CheckTime(now);
  if (!crypto::IsValidSignature(OwnerKey(tx.owner), canonical::Encode(tx.Body()),
                                tx.signature)) {
    throw Error(ErrorCode::kBadSignature, "policy deployment");
  }
  policy::PolicyState state =
      policy::DeployPolicy(tx.owner, tx.bound_agent, tx.rules, now, dids_);
  if (policies_.contains(state.policy_id)) {
    throw Error(ErrorCode::kBadRules, "policy already deployed");
  }
  now_ = now;
  policies_.emplace(state.policy_id, state);
  Emit(EventKind::kPolicyDeployed, {{"at", now}, {"policy", state.Snapshot()}});
  return state.policy_id;
}

Digest Chain::CreateWallet(const CreateWalletTx& tx, uint64_t now) {
  CheckTime(now);
  const Bytes body = canonical::Encode(tx.Body());
  if (!crypto::IsValidSignature(OwnerKey(tx.owner), body, tx.signature)) {
    throw Error(ErrorCode::kBadSignature, "wallet creation");
  }
  const credential::DelegationCredential& cred = tx.credential;
  if (!dids_.Controls(tx.owner, tx.agent)) {
    throw Error(ErrorCode::kBadBinding, "agent is not controlled by owner");
  }
  if (cred.issuer != tx.owner || cred.subject != tx.agent) {
    throw Error(ErrorCode::kBadBinding, "credential does not bind owner to agent");
  }
  if (anchors_.IssuerOf(cred.credential_id) != cred.issuer) {
    throw Error(ErrorCode::kBadBinding, "credential is not anchored");
  }
  if (!credential::VerifyCredential(cred, dids_, revocations_, now).accepted()) {
    throw Error(ErrorCode::kBadBinding, "credential does not verify");
  }
  const WalletConfig& config = tx.config;
  if (!config.IsValid()) throw Error(ErrorCode::kBadConfig, "invalid combination");
  if (config.currency != cred.constraints.currency) {
    throw Error(ErrorCode::kBadConfig, "currency differs from credential");
  }
  std::optional<policy::PolicyState> policy_state;
  if (config.policy_id) {
    auto it = policies_.find(*config.policy_id);
    if (it == policies_.end()) {
      throw Error(ErrorCode::kUnknownPolicy, config.policy_id->ToHex());
    }
    if (it->second.owner != tx.owner || it->second.bound_agent != tx.agent ||
        it->second.rules.currency != config.currency) {
      throw Error(ErrorCode::kBadConfig, "policy does not match wallet");
    }
    policy_state = it->second;
  }

  const uint64_t height = events_.size();
  const Digest wallet_id = crypto::Hash(
      "tiva/wallet",
      canonical::Encode({{"body", tx.Body()}, {"height", height}}));
  WalletState w;
  w.wallet_id = wallet_id;
  w.owner = tx.owner;
  w.agent = tx.agent;
  w.credential = cred;
  w.config = config;
  w.policy = policy_state;
  w.credential_spend = {now / cred.constraints.limit_period_seconds, 0};

  now_ = now;
  wallets_.emplace(wallet_id, w);
  Emit(EventKind::kWalletCreated, {{"agent", tx.agent.ToString()},
                                   {"at", now},
                                   {"config", config.ToCanonical()},
                                   {"credential_id", cred.credential_id.ToHex()},
                                   {"owner", tx.owner.ToString()},
                                   {"wallet_id", wallet_id.ToHex()}});
  return wallet_id;
}

void Chain::Deposit(const DepositTx& tx, uint64_t now) {
  CheckTime(now);
  auto it = wallets_.find(tx.wallet_id);
  if (it == wallets_.end()) throw Error(ErrorCode::kUnknownWallet, tx.wallet_id.ToHex());
  WalletState& w = it->second;
  if (!crypto::IsValidSignature(OwnerKey(w.owner), canonical::Encode(tx.Body()),
                                tx.signature)) {
    throw Error(ErrorCode::kBadSignature, "deposit not signed by owner");
  }
  if (tx.seq != w.owner_seq) throw Error(ErrorCode::kStaleSequence, "deposit");
  if (tx.amount_minor > UINT64_MAX - w.balance_minor) {
    throw Error(ErrorCode::kOverflow, "balance would overflow");
  }
  now_ = now;
  w.balance_minor += tx.amount_minor;
  ++w.owner_seq;
  Emit(EventKind::kDeposited, {{"amount_minor", tx.amount_minor},
                               {"at", now},
                               {"balance_after", w.balance_minor},
                               {"seq", tx.seq},
                               {"wallet_id", tx.wallet_id.ToHex()}});
}

void Chain::UpdateWhitelist(const WhitelistUpdateTx& tx, uint64_t now) {
  CheckTime(now);
  auto it = wallets_.find(tx.wallet_id);
  if (it == wallets_.end()) throw Error(ErrorCode::kUnknownWallet, tx.wallet_id.ToHex());
  WalletState& w = it->second;
  if (!crypto::IsValidSignature(OwnerKey(w.owner), canonical::Encode(tx.Body()),
                                tx.signature)) {
    throw Error(ErrorCode::kBadSignature, "whitelist update not signed by owner");
  }
  if (tx.seq != w.owner_seq) throw Error(ErrorCode::kStaleSequence, "whitelist");
  if (!w.config.attestation) {
    throw Error(ErrorCode::kBadConfig, "wallet does not require attestation");
  }
  now_ = now;
  w.config.attestation->whitelisted_code_hashes = tx.code_hashes;
  ++w.owner_seq;
  Emit(EventKind::kWhitelistUpdated, {{"at", now},
                                      {"code_hashes", DigestList(tx.code_hashes)},
                                      {"seq", tx.seq},
                                      {"wallet_id", tx.wallet_id.ToHex()}});
}

Receipt Chain::SubmitPayment(const PaymentRequest& req, uint64_t now) {
  CheckTime(now);
  now_ = now;
  const Bytes body = canonical::Encode(req.Body());
  const Digest request_digest = crypto::Hash("tiva/payment", body);

  canonical::Value payload = {{"agent", req.agent.ToString()},
                              {"at", now},
                              {"category", req.category},
                              {"currency", req.currency},
                              {"item_id", req.item_id},
                              {"nonce", req.nonce.ToHex()},
                              {"payee", req.payee},
                              {"quantity", req.quantity},
                              {"request_digest", request_digest.ToHex()},
                              {"unit_price_minor", req.unit_price_minor},
                              {"wallet_id", req.wallet_id.ToHex()}};
  auto reject = [&](PaymentReason reason) {
    payload["reason"] = PaymentReasonName(reason);
    const LedgerEvent& e = Emit(EventKind::kPaymentRejected, std::move(payload));
    return Receipt{false, reason, e.height, e.event_hash, std::nullopt};
  };

  auto wit = wallets_.find(req.wallet_id);
  if (wit == wallets_.end()) return reject(PaymentReason::kUnknownWallet);
  const WalletState& w = wit->second;

  // 1. Replay.
  if (w.nonce_seen.contains(req.nonce)) return reject(PaymentReason::kNonceReplay);

  // 2. Only the wallet's agent key may initiate payments.
  const identity::DidDocument* agent_doc = dids_.Find(w.agent);
  if (req.agent != w.agent || agent_doc == nullptr ||
      !crypto::IsValidSignature(agent_doc->public_key, body, req.agent_signature)) {
    return reject(PaymentReason::kBadAgentSignature);
  }

  // 3. Standing delegation.
  const auto cred_verdict =
      credential::VerifyCredential(w.credential, dids_, revocations_, now);
  if (!cred_verdict.accepted()) {
    return reject(FromCredentialReject(*cred_verdict.reject));
  }

  // 4. Credential periodic limit.
  const credential::SpendConstraints& limits = w.credential.constraints;
  if (req.quantity != 0 && req.unit_price_minor > UINT64_MAX / req.quantity) {
    return reject(PaymentReason::kAmountOverflow);
  }
  const uint64_t amount = req.unit_price_minor * req.quantity;
  payload["amount_minor"] = amount;
  policy::EpochCounter spend =
      w.credential_spend.At(now, limits.limit_period_seconds);
  if (!policy::EpochCounter::Fits(spend.spent, amount, limits.limit_minor)) {
    return reject(PaymentReason::kCredentialLimit);
  }

  // 5. Credential scope.
  if (req.currency != limits.currency) return reject(PaymentReason::kCredentialCurrency);
  if (!limits.AdmitsPayee(req.payee)) return reject(PaymentReason::kCredentialPayee);
  if (!limits.AdmitsCategory(req.category)) {
    return reject(PaymentReason::kCredentialCategory);
  }

  // 6. Intent proof.
  const IntentProof& proof = req.intent_proof;
  const IntentMode mode = w.config.mode();
  std::optional<uint64_t> new_consumption;
  std::optional<policy::PolicyState> new_policy;
  Digest evidence_digest;
  canonical::Value evidence;
  switch (proof.kind) {
    case IntentProof::Kind::kNone:
      return reject(PaymentReason::kNoIntentProof);
    case IntentProof::Kind::kPolicy: {
      if (mode != IntentMode::kPolicy) {
        return reject(PaymentReason::kIntentModeMismatch);
      }
      policy::PolicyPayment pp{amount, req.payee, req.category, req.currency,
                               req.agent};
      auto decision = policy::Evaluate(*w.policy, pp, now);
      if (!decision.authorized()) return reject(FromPolicyDeny(*decision.deny));
      evidence = {{"amount_minor", amount},
                  {"kind", "policy"},
                  {"policy_after", decision.next.Snapshot()},
                  {"request_digest", request_digest.ToHex()}};
      evidence_digest = EvidenceDigest(evidence);
      new_policy = decision.next;
      break;
    }
    case IntentProof::Kind::kMandate: {
      const mandate::IntentMandate& m = *proof.mandate;
      const bool zk_wallet = mode == IntentMode::kZkMandate;
      const bool mode_ok =
          zk_wallet ? (m.terms.IsZk() && proof.price_proof.has_value())
                    : (!m.terms.IsZk() && !proof.price_proof.has_value() &&
                       (mode == IntentMode::kPlaintextMandate ||
                        w.config.allow_mandate_override));
      if (!mode_ok) return reject(PaymentReason::kIntentModeMismatch);
      if (m.issuer != w.owner ||
          !mandate::VerifyMandateSignature(m, OwnerKey(w.owner))) {
        return reject(PaymentReason::kBadMandateSignature);
      }
      if (m.terms.agent != w.agent) return reject(PaymentReason::kMandateAgent);
      const mandate::MandatePayment mp{req.item_id, req.unit_price_minor,
                                       req.quantity, req.payee, req.currency};
      const uint64_t consumed = w.mandate_consumption.Consumed(m.mandate_id);
      const mandate::MandateDecision decision =
          zk_wallet ? mandate::CheckMandateZk(
                          m, mp, *proof.price_proof,
                          mandate::PriceProofContext(m.mandate_id, req.nonce),
                          consumed, now)
                    : mandate::CheckMandate(m, mp, consumed, now);
      if (!decision.approved()) return reject(FromMandateReject(*decision.reject));
      if (zk_wallet) {
        evidence = {{"kind", "zk_mandate"},
                    {"mandate", m.ToCanonical()},
                    {"nonce", req.nonce.ToHex()},
                    {"price_proof", proof.price_proof->ToCanonical()},
                    {"unit_price_minor", req.unit_price_minor}};
      } else {
        evidence = {{"kind", "mandate"}, {"mandate", m.ToCanonical()}};
      }
      evidence_digest = EvidenceDigest(evidence);
      new_consumption = decision.consumed_after;
      break;
    }
  }

  // 7. Attestation.
  if (w.config.attestation) {
    auto verdict = attestation::VerifyQuotes(req.quotes, request_digest,
                                             *w.config.attestation, now);
    if (!verdict.accepted()) return reject(FromAttestationReject(*verdict.reject));
  }

  // 8. Funds.
  if (w.balance_minor < amount) return reject(PaymentReason::kInsufficientBalance);

  // Commit.
  WalletState& mw = wit->second;
  mw.balance_minor -= amount;
  mw.nonce_seen.insert(req.nonce);
  spend.spent += amount;
  mw.credential_spend = spend;
  if (new_consumption) {
    mw.mandate_consumption.Set(proof.mandate->mandate_id, *new_consumption);
  }
  if (new_policy) mw.policy = *new_policy;
  evidence_.emplace(evidence_digest, std::move(evidence));

  payload["balance_after"] = mw.balance_minor;
  payload["intent_kind"] = proof.kind == IntentProof::Kind::kPolicy
                               ? "policy"
                               : (mode == IntentMode::kZkMandate ? "zk_mandate"
                                                                 : "mandate");
  const LedgerEvent& e =
      Emit(EventKind::kPaymentAccepted, std::move(payload), evidence_digest);
  return Receipt{true, std::nullopt, e.height, e.event_hash, evidence_digest};
}

}  // namespace tiva::ledger
