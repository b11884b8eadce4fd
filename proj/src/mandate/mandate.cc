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

#include "tiva/mandate/mandate.h"

#include <functional>

#include "tiva/common/error.h"
#include "tiva/credential/credential.h"
#include "tiva/zk/compliance.h"

namespace tiva::mandate {

bool MandateTerms::IsValid() const {
  return max_quantity >= 1 && !item_id.empty() && !vendor_account.empty() &&
         credential::IsCurrencyCode(currency) &&
         max_unit_price_minor.has_value() != price_limit_commitment.has_value();
}

canonical::Value IntentMandate::Body() const {
  canonical::Value body = {{"agent", terms.agent.ToString()},
                           {"currency", terms.currency},
                           {"expires_at", terms.expires_at},
                           {"issued_at", issued_at},
                           {"issuer", issuer.ToString()},
                           {"item_id", terms.item_id},
                           {"max_quantity", terms.max_quantity},
                           {"type", "IntentMandate"},
                           {"vendor_account", terms.vendor_account}};
  if (terms.max_unit_price_minor) {
    body["max_unit_price_minor"] = *terms.max_unit_price_minor;
  }
  if (terms.price_limit_commitment) {
    body["price_limit_commitment"] = terms.price_limit_commitment->ToHex();
  }
  return body;
}

Digest IntentMandate::ComputeId() const {
  return crypto::Hash("tiva/mandate", canonical::Encode(Body()));
}

canonical::Value IntentMandate::ToCanonical() const {
  return {{"body", Body()},
          {"mandate_id", mandate_id.ToHex()},
          {"signature", signature.ToHex()}};
}

IntentMandate IntentMandate::FromCanonical(const canonical::Value& v) {
  try {
    const canonical::Value& body = canonical::Field(v, "body");
    if (canonical::GetString(body, "type") != "IntentMandate") {
      throw Error(ErrorCode::kParseError, "not an IntentMandate");
    }
    IntentMandate m;
    m.mandate_id = canonical::GetFixed<Digest>(v, "mandate_id");
    m.signature = canonical::GetFixed<Signature>(v, "signature");
    m.issuer = Did::Parse(canonical::GetString(body, "issuer"));
    m.issued_at = canonical::GetUint(body, "issued_at");
    MandateTerms& t = m.terms;
    t.agent = Did::Parse(canonical::GetString(body, "agent"));
    t.currency = canonical::GetString(body, "currency");
    t.expires_at = canonical::GetUint(body, "expires_at");
    t.item_id = canonical::GetString(body, "item_id");
    t.max_quantity = canonical::GetUint(body, "max_quantity");
    t.vendor_account = canonical::GetString(body, "vendor_account");
    if (canonical::Has(body, "max_unit_price_minor")) {
      t.max_unit_price_minor = canonical::GetUint(body, "max_unit_price_minor");
    }
    if (canonical::Has(body, "price_limit_commitment")) {
      t.price_limit_commitment = zk::Commitment::FromHex(
          canonical::GetString(body, "price_limit_commitment"));
    }
    return m;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    throw Error(ErrorCode::kParseError, e.what());
  }
}

IntentMandate SignMandate(const crypto::KeyPair& user, const MandateTerms& terms,
                          uint64_t now, const identity::DidRegistry& dids) {
  if (!terms.IsValid()) throw Error(ErrorCode::kBadBody, "");
  const Did issuer = Did::FromPublicKey(user.public_key());
  if (!dids.Controls(issuer, terms.agent)) {
    throw Error(ErrorCode::kAgentNotControlled, terms.agent.ToString());
  }
  IntentMandate m;
  m.issuer = issuer;
  m.issued_at = now;
  m.terms = terms;
  const Bytes body = canonical::Encode(m.Body());
  m.mandate_id = crypto::Hash("tiva/mandate", body);
  m.signature = user.Sign(body);
  return m;
}

bool VerifyMandateSignature(const IntentMandate& m,
                            const crypto::PublicKey& issuer_key) {
  const Bytes body = canonical::Encode(m.Body());
  return crypto::Hash("tiva/mandate", body) == m.mandate_id &&
         crypto::IsValidSignature(issuer_key, body, m.signature);
}

std::string_view MandateRejectName(MandateReject r) {
  switch (r) {
    case MandateReject::kExpired: return "Expired";
    case MandateReject::kItem: return "Item";
    case MandateReject::kVendor: return "Vendor";
    case MandateReject::kCurrency: return "Currency";
    case MandateReject::kPrice: return "Price";
    case MandateReject::kQuantity: return "Quantity";
  }
  return "Unknown";
}

namespace {

MandateDecision Check(const IntentMandate& m, const MandatePayment& p,
                      uint64_t consumed, uint64_t now,
                      const std::function<bool()>& price_ok) {
  const MandateTerms& t = m.terms;
  if (now > t.expires_at) return {MandateReject::kExpired, consumed};
  if (p.item_id != t.item_id) return {MandateReject::kItem, consumed};
  if (p.payee != t.vendor_account) return {MandateReject::kVendor, consumed};
  if (p.currency != t.currency) return {MandateReject::kCurrency, consumed};
  if (!price_ok()) return {MandateReject::kPrice, consumed};
  if (consumed > t.max_quantity || p.quantity > t.max_quantity - consumed) {
    return {MandateReject::kQuantity, consumed};
  }
  return {std::nullopt, consumed + p.quantity};
}

}  // namespace

MandateDecision CheckMandate(const IntentMandate& m, const MandatePayment& p,
                             uint64_t consumed, uint64_t now) {
  return Check(m, p, consumed, now, [&] {
    return m.terms.max_unit_price_minor &&
           p.unit_price_minor <= *m.terms.max_unit_price_minor;
  });
}

MandateDecision CheckMandateZk(const IntentMandate& m, const MandatePayment& p,
                               const zk::RangeProof& price_proof,
                               const Digest& proof_context, uint64_t consumed,
                               uint64_t now) {
  return Check(m, p, consumed, now, [&] {
    return m.terms.price_limit_commitment &&
           zk::VerifyPriceWithinLimit(*m.terms.price_limit_commitment,
                                      p.unit_price_minor, price_proof,
                                      proof_context);
  });
}

Digest PriceProofContext(const Digest& mandate_id, const Digest& nonce) {
  Bytes payload;
  Append(payload, mandate_id.span());
  Append(payload, nonce.span());
  return crypto::Hash("tiva/zk/mandate-price", payload);
}

uint64_t MandateConsumption::Consumed(const Digest& mandate_id) const {
  auto it = consumed_.find(mandate_id);
  return it == consumed_.end() ? 0 : it->second;
}

void MandateConsumption::Set(const Digest& mandate_id, uint64_t consumed) {
  if (consumed < Consumed(mandate_id)) {
    throw Error(ErrorCode::kOverflow, "mandate consumption cannot decrease");
  }
  consumed_[mandate_id] = consumed;
}

canonical::Value MandateConsumption::Snapshot() const {
  canonical::Value out = canonical::Value::object();
  for (const auto& [id, q] : consumed_) out[id.ToHex()] = q;
  return out;
}

}  // namespace tiva::mandate
