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

#include "tiva/ledger/transactions.h"

#include "tiva/common/error.h"

namespace tiva::ledger {

namespace {

canonical::Value DigestSet(const std::set<Digest>& items) {
  canonical::Value arr = canonical::Value::array();
  for (const auto& d : items) arr.push_back(d.ToHex());
  return arr;
}

template <typename F>
auto Parsing(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    throw Error(ErrorCode::kParseError, e.what());
  }
}

}  // namespace

std::string_view IntentModeName(IntentMode mode) {
  switch (mode) {
    case IntentMode::kPlaintextMandate: return "mandate";
    case IntentMode::kZkMandate: return "zk_mandate";
    case IntentMode::kPolicy: return "policy";
  }
  return "unknown";
}

IntentMode WalletConfig::mode() const {
  if (policy_id) return IntentMode::kPolicy;
  return zk_mode ? IntentMode::kZkMandate : IntentMode::kPlaintextMandate;
}

bool WalletConfig::IsValid() const {
  if (zk_mode && policy_id) return false;
  if (allow_mandate_override && !policy_id) return false;
  if (attestation && !attestation->IsValid()) return false;
  return credential::IsCurrencyCode(currency);
}

canonical::Value WalletConfig::ToCanonical() const {
  canonical::Value v = {{"allow_mandate_override", allow_mandate_override ? 1 : 0},
                        {"currency", currency},
                        {"zk_mode", zk_mode ? 1 : 0}};
  if (policy_id) v["policy_id"] = policy_id->ToHex();
  if (attestation) v["attestation"] = attestation->ToCanonical();
  return v;
}

WalletConfig WalletConfig::FromCanonical(const canonical::Value& v) {
  return Parsing([&] {
    WalletConfig c;
    c.allow_mandate_override = canonical::GetUint(v, "allow_mandate_override") != 0;
    c.currency = canonical::GetString(v, "currency");
    c.zk_mode = canonical::GetUint(v, "zk_mode") != 0;
    if (canonical::Has(v, "policy_id")) {
      c.policy_id = canonical::GetFixed<Digest>(v, "policy_id");
    }
    if (canonical::Has(v, "attestation")) {
      c.attestation = attestation::AttestationPolicy::FromCanonical(
          canonical::Field(v, "attestation"));
    }
    return c;
  });
}

canonical::Value CreateWalletTx::Body() const {
  return {{"agent", agent.ToString()},
          {"config", config.ToCanonical()},
          {"credential", credential.ToCanonical()},
          {"owner", owner.ToString()},
          {"type", "CreateWallet"}};
}

CreateWalletTx CreateWalletTx::Sign(
    const crypto::KeyPair& owner, const Did& agent,
    const credential::DelegationCredential& credential,
    const WalletConfig& config) {
  CreateWalletTx tx;
  tx.owner = Did::FromPublicKey(owner.public_key());
  tx.agent = agent;
  tx.credential = credential;
  tx.config = config;
  tx.signature = owner.Sign(canonical::Encode(tx.Body()));
  return tx;
}

canonical::Value CreateWalletTx::ToCanonical() const {
  return {{"body", Body()}, {"signature", signature.ToHex()}};
}

CreateWalletTx CreateWalletTx::FromCanonical(const canonical::Value& v) {
  return Parsing([&] {
    const canonical::Value& body = canonical::Field(v, "body");
    CreateWalletTx tx;
    tx.agent = Did::Parse(canonical::GetString(body, "agent"));
    tx.owner = Did::Parse(canonical::GetString(body, "owner"));
    tx.config = WalletConfig::FromCanonical(canonical::Field(body, "config"));
    tx.credential = credential::DelegationCredential::FromCanonical(
        canonical::Field(body, "credential"));
    tx.signature = canonical::GetFixed<Signature>(v, "signature");
    return tx;
  });
}

canonical::Value DepositTx::Body() const {
  return {{"amount_minor", amount_minor},
          {"seq", seq},
          {"type", "Deposit"},
          {"wallet_id", wallet_id.ToHex()}};
}

DepositTx DepositTx::Sign(const crypto::KeyPair& owner, const Digest& wallet_id,
                          uint64_t amount_minor, uint64_t seq) {
  DepositTx tx{wallet_id, amount_minor, seq, {}};
  tx.signature = owner.Sign(canonical::Encode(tx.Body()));
  return tx;
}

canonical::Value WhitelistUpdateTx::Body() const {
  return {{"code_hashes", DigestSet(code_hashes)},
          {"seq", seq},
          {"type", "WhitelistUpdate"},
          {"wallet_id", wallet_id.ToHex()}};
}

WhitelistUpdateTx WhitelistUpdateTx::Sign(const crypto::KeyPair& owner,
                                          const Digest& wallet_id,
                                          const std::set<Digest>& code_hashes,
                                          uint64_t seq) {
  WhitelistUpdateTx tx{wallet_id, code_hashes, seq, {}};
  tx.signature = owner.Sign(canonical::Encode(tx.Body()));
  return tx;
}

canonical::Value PolicyDeploymentTx::Body() const {
  return {{"bound_agent", bound_agent.ToString()},
          {"owner", owner.ToString()},
          {"rules", rules.ToCanonical()},
          {"type", "PolicyDeployment"}};
}

PolicyDeploymentTx PolicyDeploymentTx::Sign(const crypto::KeyPair& owner,
                                            const Did& bound_agent,
                                            const policy::PolicyRules& rules) {
  PolicyDeploymentTx tx{Did::FromPublicKey(owner.public_key()), bound_agent,
                        rules, {}};
  tx.signature = owner.Sign(canonical::Encode(tx.Body()));
  return tx;
}

RevokeTx RevokeTx::Sign(const crypto::KeyPair& issuer,
                        const Digest& credential_id) {
  return {credential_id,
          issuer.Sign(identity::RevocationRegistry::RevocationMessage(credential_id))};
}

canonical::Value RevokeTx::ToCanonical() const {
  return {{"credential_id", credential_id.ToHex()},
          {"signature", signature.ToHex()}};
}

RevokeTx RevokeTx::FromCanonical(const canonical::Value& v) {
  return {canonical::GetFixed<Digest>(v, "credential_id"),
          canonical::GetFixed<Signature>(v, "signature")};
}

canonical::Value IntentProof::ToCanonical() const {
  switch (kind) {
    case Kind::kNone: return {{"kind", "none"}};
    case Kind::kPolicy: return {{"kind", "policy"}};
    case Kind::kMandate: {
      canonical::Value v = {{"kind", "mandate"},
                            {"mandate", mandate->ToCanonical()}};
      if (price_proof) v["price_proof"] = price_proof->ToCanonical();
      return v;
    }
  }
  return {};
}

IntentProof IntentProof::FromCanonical(const canonical::Value& v) {
  return Parsing([&] {
    const std::string kind = canonical::GetString(v, "kind");
    if (kind == "none") return None();
    if (kind == "policy") return Policy();
    if (kind != "mandate") {
      throw Error(ErrorCode::kParseError, "unknown intent proof kind");
    }
    IntentProof p;
    p.kind = Kind::kMandate;
    p.mandate = mandate::IntentMandate::FromCanonical(canonical::Field(v, "mandate"));
    if (canonical::Has(v, "price_proof")) {
      p.price_proof = zk::RangeProof::FromCanonical(canonical::Field(v, "price_proof"));
    }
    return p;
  });
}

canonical::Value PaymentRequest::Body() const {
  return {{"agent", agent.ToString()},
          {"category", category},
          {"currency", currency},
          {"intent_proof", intent_proof.ToCanonical()},
          {"item_id", item_id},
          {"nonce", nonce.ToHex()},
          {"payee", payee},
          {"quantity", quantity},
          {"type", "PaymentRequest"},
          {"unit_price_minor", unit_price_minor},
          {"wallet_id", wallet_id.ToHex()}};
}

Digest PaymentRequest::ComputeDigest() const {
  return crypto::Hash("tiva/payment", canonical::Encode(Body()));
}

void PaymentRequest::SignWith(const crypto::KeyPair& key) {
  agent_signature = key.Sign(canonical::Encode(Body()));
}

canonical::Value PaymentRequest::ToCanonical() const {
  canonical::Value quote_list = canonical::Value::array();
  for (const auto& q : quotes) quote_list.push_back(q.ToCanonical());
  return {{"agent_signature", agent_signature.ToHex()},
          {"body", Body()},
          {"quotes", quote_list}};
}

PaymentRequest PaymentRequest::FromCanonical(const canonical::Value& v) {
  return Parsing([&] {
    const canonical::Value& body = canonical::Field(v, "body");
    if (canonical::GetString(body, "type") != "PaymentRequest") {
      throw Error(ErrorCode::kParseError, "not a PaymentRequest");
    }
    PaymentRequest r;
    r.agent = Did::Parse(canonical::GetString(body, "agent"));
    r.category = canonical::GetString(body, "category");
    r.currency = canonical::GetString(body, "currency");
    r.intent_proof = IntentProof::FromCanonical(canonical::Field(body, "intent_proof"));
    r.item_id = canonical::GetString(body, "item_id");
    r.nonce = canonical::GetFixed<Digest>(body, "nonce");
    r.payee = canonical::GetString(body, "payee");
    r.quantity = canonical::GetUint(body, "quantity");
    r.unit_price_minor = canonical::GetUint(body, "unit_price_minor");
    r.wallet_id = canonical::GetFixed<Digest>(body, "wallet_id");
    r.agent_signature = canonical::GetFixed<Signature>(v, "agent_signature");
    const canonical::Value& quotes = canonical::Field(v, "quotes");
    if (!quotes.is_array()) throw Error(ErrorCode::kParseError, "quotes");
    for (const auto& q : quotes) {
      r.quotes.push_back(attestation::AttestationQuote::FromCanonical(q));
    }
    return r;
  });
}

}  // namespace tiva::ledger
