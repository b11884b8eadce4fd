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

#include "tiva/attestation/attestation.h"

#include <algorithm>

#include "tiva/common/error.h"

namespace tiva::attestation {

Bytes EndorsementMessage(const PublicKey& enclave_pub, const Digest& code_hash) {
  return canonical::Encode({{"code_hash", code_hash.ToHex()},
                            {"enclave_pub", enclave_pub.ToHex()}});
}

EnclaveIdentity EnclaveIdentity::Endorse(const crypto::KeyPair& root,
                                         const crypto::KeyPair& enclave_key,
                                         const Digest& code_hash) {
  return EnclaveIdentity(
      enclave_key, code_hash,
      root.Sign(EndorsementMessage(enclave_key.public_key(), code_hash)));
}

EnclaveIdentity EnclaveIdentity::WithEndorsement(
    const crypto::KeyPair& enclave_key, const Digest& code_hash,
    const Signature& endorsement) {
  return EnclaveIdentity(enclave_key, code_hash, endorsement);
}

canonical::Value AttestationQuote::Body() const {
  return {{"code_hash", code_hash.ToHex()},
          {"enclave_pub", enclave_pub.ToHex()},
          {"issued_at", issued_at},
          {"report_data", report_data.ToHex()},
          {"type", "AttestationQuote"}};
}

canonical::Value AttestationQuote::ToCanonical() const {
  return {{"body", Body()},
          {"endorsement", endorsement.ToHex()},
          {"quote_sig", quote_sig.ToHex()}};
}

AttestationQuote AttestationQuote::FromCanonical(const canonical::Value& v) {
  const canonical::Value& body = canonical::Field(v, "body");
  if (canonical::GetString(body, "type") != "AttestationQuote") {
    throw Error(ErrorCode::kParseError, "not an AttestationQuote");
  }
  AttestationQuote q;
  q.code_hash = canonical::GetFixed<Digest>(body, "code_hash");
  q.enclave_pub = canonical::GetFixed<PublicKey>(body, "enclave_pub");
  q.issued_at = canonical::GetUint(body, "issued_at");
  q.report_data = canonical::GetFixed<Digest>(body, "report_data");
  q.endorsement = canonical::GetFixed<Signature>(v, "endorsement");
  q.quote_sig = canonical::GetFixed<Signature>(v, "quote_sig");
  return q;
}

AttestationQuote IssueQuote(const EnclaveIdentity& enclave,
                            const Digest& payment_digest, uint64_t now) {
  AttestationQuote q;
  q.enclave_pub = enclave.public_key();
  q.code_hash = enclave.code_hash();
  q.report_data = payment_digest;
  q.issued_at = now;
  q.endorsement = enclave.endorsement();
  q.quote_sig = enclave.key().Sign(canonical::Encode(q.Body()));
  return q;
}

bool AttestationPolicy::IsValid() const {
  std::set<PublicKey> distinct(enclave_set.begin(), enclave_set.end());
  return required_quotes_k >= 1 && required_quotes_k <= enclave_set.size() &&
         distinct.size() == enclave_set.size() && freshness_window_seconds >= 1;
}

canonical::Value AttestationPolicy::ToCanonical() const {
  canonical::Value set = canonical::Value::array();
  for (const auto& k : enclave_set) set.push_back(k.ToHex());
  canonical::Value hashes = canonical::Value::array();
  for (const auto& h : whitelisted_code_hashes) hashes.push_back(h.ToHex());
  return {{"enclave_set", set},
          {"freshness_window_seconds", freshness_window_seconds},
          {"required_quotes_k", required_quotes_k},
          {"root_key", root_key.ToHex()},
          {"whitelisted_code_hashes", hashes}};
}

AttestationPolicy AttestationPolicy::FromCanonical(const canonical::Value& v) {
  AttestationPolicy p;
  p.root_key = canonical::GetFixed<PublicKey>(v, "root_key");
  p.freshness_window_seconds = canonical::GetUint(v, "freshness_window_seconds");
  const uint64_t k = canonical::GetUint(v, "required_quotes_k");
  if (k > UINT32_MAX) throw Error(ErrorCode::kParseError, "k out of range");
  p.required_quotes_k = static_cast<uint32_t>(k);
  for (const auto& s : canonical::Field(v, "enclave_set")) {
    auto key = s.is_string() ? PublicKey::FromHex(s.get<std::string>())
                             : std::nullopt;
    if (!key) throw Error(ErrorCode::kParseError, "bad enclave key");
    p.enclave_set.push_back(*key);
  }
  for (const auto& s : canonical::GetStringSet(v, "whitelisted_code_hashes")) {
    auto h = Digest::FromHex(s);
    if (!h) throw Error(ErrorCode::kParseError, "bad code hash");
    p.whitelisted_code_hashes.insert(*h);
  }
  return p;
}

std::string_view AttestationRejectName(AttestationReject r) {
  switch (r) {
    case AttestationReject::kSignature: return "Signature";
    case AttestationReject::kEndorsement: return "Endorsement";
    case AttestationReject::kCodeHash: return "CodeHash";
    case AttestationReject::kBinding: return "Binding";
    case AttestationReject::kFreshness: return "Freshness";
    case AttestationReject::kQuorum: return "Quorum";
  }
  return "Unknown";
}

std::optional<AttestationReject> CheckQuote(const AttestationQuote& q,
                                            const Digest& payment_digest,
                                            const AttestationPolicy& policy,
                                            uint64_t now) {
  if (!crypto::IsValidSignature(q.enclave_pub, canonical::Encode(q.Body()),
                                q.quote_sig)) {
    return AttestationReject::kSignature;
  }
  const bool in_set = std::find(policy.enclave_set.begin(),
                                policy.enclave_set.end(),
                                q.enclave_pub) != policy.enclave_set.end();
  if (!in_set ||
      !crypto::IsValidSignature(policy.root_key,
                                EndorsementMessage(q.enclave_pub, q.code_hash),
                                q.endorsement)) {
    return AttestationReject::kEndorsement;
  }
  if (!policy.whitelisted_code_hashes.contains(q.code_hash)) {
    return AttestationReject::kCodeHash;
  }
  if (q.report_data != payment_digest) return AttestationReject::kBinding;
  if (q.issued_at > now || now - q.issued_at > policy.freshness_window_seconds) {
    return AttestationReject::kFreshness;
  }
  return std::nullopt;
}

AttestationVerdict VerifyQuotes(const std::vector<AttestationQuote>& quotes,
                                const Digest& payment_digest,
                                const AttestationPolicy& policy, uint64_t now) {
  std::set<PublicKey> valid;
  std::optional<AttestationReject> first_failure;
  for (const auto& q : quotes) {
    auto r = CheckQuote(q, payment_digest, policy, now);
    if (!r) {
      valid.insert(q.enclave_pub);
    } else if (!first_failure || *r < *first_failure) {
      first_failure = r;
    }
  }
  AttestationVerdict v;
  v.distinct_valid = valid.size();
  if (valid.size() >= policy.required_quotes_k) return v;
  v.reject = (valid.empty() && first_failure) ? *first_failure
                                              : AttestationReject::kQuorum;
  return v;
}

}  // namespace tiva::attestation
