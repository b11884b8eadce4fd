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

#include "tiva/credential/credential.h"

#include <algorithm>

#include "tiva/common/error.h"

namespace tiva::credential {

bool IsCurrencyCode(std::string_view code) {
  return !code.empty() && code.size() <= 8 &&
         std::all_of(code.begin(), code.end(),
                     [](char c) { return c >= 'A' && c <= 'Z'; });
}

namespace {

bool IsLowercaseLabel(const std::string& s) {
  return !s.empty() && std::none_of(s.begin(), s.end(), [](char c) {
    return c >= 'A' && c <= 'Z';
  });
}

}  // namespace

bool SpendConstraints::IsValid() const {
  return limit_period_seconds >= 1 && IsCurrencyCode(currency) &&
         expires_at > 0 &&
         std::all_of(allowed_categories.begin(), allowed_categories.end(),
                     IsLowercaseLabel) &&
         std::none_of(allowed_payees.begin(), allowed_payees.end(),
                      [](const std::string& p) { return p.empty(); });
}

bool SpendConstraints::AdmitsPayee(const std::string& payee) const {
  return allowed_payees.empty() || allowed_payees.contains(payee);
}

bool SpendConstraints::AdmitsCategory(const std::string& category) const {
  return allowed_categories.empty() || allowed_categories.contains(category);
}

canonical::Value SpendConstraints::ToCanonical() const {
  return {{"allowed_categories", canonical::StringSet(allowed_categories)},
          {"allowed_payees", canonical::StringSet(allowed_payees)},
          {"currency", currency},
          {"expires_at", expires_at},
          {"limit_minor", limit_minor},
          {"limit_period_seconds", limit_period_seconds}};
}

SpendConstraints SpendConstraints::FromCanonical(const canonical::Value& v) {
  SpendConstraints c;
  c.allowed_categories = canonical::GetStringSet(v, "allowed_categories");
  c.allowed_payees = canonical::GetStringSet(v, "allowed_payees");
  c.currency = canonical::GetString(v, "currency");
  c.expires_at = canonical::GetUint(v, "expires_at");
  c.limit_minor = canonical::GetUint(v, "limit_minor");
  c.limit_period_seconds = canonical::GetUint(v, "limit_period_seconds");
  return c;
}

canonical::Value DelegationCredential::Body() const {
  return {{"constraints", constraints.ToCanonical()},
          {"issued_at", issued_at},
          {"issuer", issuer.ToString()},
          {"subject", subject.ToString()},
          {"type", "DelegationCredential"}};
}

Digest DelegationCredential::ComputeId() const {
  return crypto::Hash("tiva/vc", canonical::Encode(Body()));
}

canonical::Value DelegationCredential::ToCanonical() const {
  return {{"body", Body()},
          {"credential_id", credential_id.ToHex()},
          {"signature", signature.ToHex()}};
}

DelegationCredential DelegationCredential::FromCanonical(
    const canonical::Value& v) {
  try {
    const canonical::Value& body = canonical::Field(v, "body");
    if (canonical::GetString(body, "type") != "DelegationCredential") {
      throw Error(ErrorCode::kParseError, "not a DelegationCredential");
    }
    DelegationCredential c;
    c.credential_id = canonical::GetFixed<Digest>(v, "credential_id");
    c.signature = canonical::GetFixed<Signature>(v, "signature");
    c.issuer = Did::Parse(canonical::GetString(body, "issuer"));
    c.subject = Did::Parse(canonical::GetString(body, "subject"));
    c.issued_at = canonical::GetUint(body, "issued_at");
    c.constraints =
        SpendConstraints::FromCanonical(canonical::Field(body, "constraints"));
    return c;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    throw Error(ErrorCode::kParseError, e.what());
  }
}

DelegationCredential IssueCredential(const crypto::KeyPair& issuer,
                                     const Did& subject,
                                     const SpendConstraints& constraints,
                                     uint64_t now,
                                     const identity::DidRegistry& dids) {
  if (!constraints.IsValid()) {
    throw Error(ErrorCode::kBadConstraints, "");
  }
  const Did issuer_did = Did::FromPublicKey(issuer.public_key());
  if (!dids.Controls(issuer_did, subject)) {
    throw Error(ErrorCode::kSubjectNotControlled, subject.ToString());
  }
  DelegationCredential c;
  c.issuer = issuer_did;
  c.subject = subject;
  c.constraints = constraints;
  c.issued_at = now;
  const Bytes body = canonical::Encode(c.Body());
  c.credential_id = crypto::Hash("tiva/vc", body);
  c.signature = issuer.Sign(body);
  return c;
}

std::string_view CredentialRejectName(CredentialReject r) {
  switch (r) {
    case CredentialReject::kBadSignature: return "BadSignature";
    case CredentialReject::kController: return "Controller";
    case CredentialReject::kRevoked: return "Revoked";
    case CredentialReject::kExpired: return "Expired";
  }
  return "Unknown";
}

CredentialVerdict VerifyCredential(const DelegationCredential& cred,
                                   const identity::DidRegistry& dids,
                                   const identity::RevocationRegistry& revoked,
                                   uint64_t now) {
  const Bytes body = canonical::Encode(cred.Body());
  const identity::DidDocument* issuer = dids.Find(cred.issuer);
  if (issuer == nullptr ||
      crypto::Hash("tiva/vc", body) != cred.credential_id ||
      !crypto::IsValidSignature(issuer->public_key, body, cred.signature)) {
    return {CredentialReject::kBadSignature};
  }
  if (!dids.Controls(cred.issuer, cred.subject)) {
    return {CredentialReject::kController};
  }
  if (revoked.IsRevoked(cred.credential_id)) {
    return {CredentialReject::kRevoked};
  }
  if (now > cred.constraints.expires_at) {
    return {CredentialReject::kExpired};
  }
  return {};
}

}  // namespace tiva::credential
