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

namespace tiva::credential {

using crypto::Digest;
using crypto::Signature;
using identity::Did;

// Standing spending authority. Amounts are integer minor units. An empty
// payee or category set leaves that dimension unrestricted.
struct SpendConstraints {
  uint64_t limit_minor = 0;
  uint64_t limit_period_seconds = 0;
  std::string currency;
  std::set<std::string> allowed_payees;
  std::set<std::string> allowed_categories;
  uint64_t expires_at = 0;

  bool IsValid() const;
  bool AdmitsPayee(const std::string& payee) const;
  bool AdmitsCategory(const std::string& category) const;

  canonical::Value ToCanonical() const;
  static SpendConstraints FromCanonical(const canonical::Value& v);

  friend bool operator==(const SpendConstraints&,
                         const SpendConstraints&) = default;
};

// 1-8 characters A-Z.
bool IsCurrencyCode(std::string_view code);

struct DelegationCredential {
  Digest credential_id;  // hash("tiva/vc", canonical body)
  Did issuer;
  Did subject;
  SpendConstraints constraints;
  uint64_t issued_at = 0;
  Signature signature;  // issuer over canonical body

  canonical::Value Body() const;
  Digest ComputeId() const;

  // Signed structure; this is also the `.vc` file content.
  canonical::Value ToCanonical() const;
  static DelegationCredential FromCanonical(const canonical::Value& v);

  friend bool operator==(const DelegationCredential&,
                         const DelegationCredential&) = default;
};

// Throws kBadConstraints or kSubjectNotControlled.
DelegationCredential IssueCredential(const crypto::KeyPair& issuer,
                                     const Did& subject,
                                     const SpendConstraints& constraints,
                                     uint64_t now,
                                     const identity::DidRegistry& dids);

// Checked in this order; the first failure is reported.
enum class CredentialReject {
  kBadSignature,
  kController,
  kRevoked,
  kExpired,
};

std::string_view CredentialRejectName(CredentialReject r);

struct CredentialVerdict {
  std::optional<CredentialReject> reject;

  bool accepted() const { return !reject.has_value(); }
};

CredentialVerdict VerifyCredential(const DelegationCredential& cred,
                                   const identity::DidRegistry& dids,
                                   const identity::RevocationRegistry& revoked,
                                   uint64_t now);

}  // namespace tiva::credential
