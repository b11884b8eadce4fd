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

// Simulated remote attestation. A software manufacturer root key endorses
// (enclave key, code measurement) pairs; enclaves sign quotes binding a
// payment digest; wallets accept k-of-n quorums of valid quotes.

#include <cstdint>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "tiva/crypto/canonical.h"
#include "tiva/crypto/hash.h"
#include "tiva/crypto/sign.h"

namespace tiva::attestation {

using crypto::Digest;
using crypto::PublicKey;
using crypto::Signature;

inline constexpr uint64_t kDefaultFreshnessSeconds = 300;

// Bytes the root key signs: canonical {"code_hash", "enclave_pub"}.
Bytes EndorsementMessage(const PublicKey& enclave_pub, const Digest& code_hash);

class EnclaveIdentity {
 public:
  // The root signs whatever measurement the enclave actually runs; a
  // tampered enclave is endorsed with its tampered code hash.
  static EnclaveIdentity Endorse(const crypto::KeyPair& root,
                                 const crypto::KeyPair& enclave_key,
                                 const Digest& code_hash);
  // For tests and adversarial scenarios.
  static EnclaveIdentity WithEndorsement(const crypto::KeyPair& enclave_key,
                                         const Digest& code_hash,
                                         const Signature& endorsement);

  const PublicKey& public_key() const { return key_.public_key(); }
  const Digest& code_hash() const { return code_hash_; }
  const Signature& endorsement() const { return endorsement_; }
  const crypto::KeyPair& key() const { return key_; }

 private:
  EnclaveIdentity(const crypto::KeyPair& key, const Digest& code_hash,
                  const Signature& endorsement)
      : key_(key), code_hash_(code_hash), endorsement_(endorsement) {}

  crypto::KeyPair key_;
  Digest code_hash_;
  Signature endorsement_;
};

struct AttestationQuote {
  PublicKey enclave_pub;
  Digest code_hash;
  Digest report_data;  // digest of the attested payment request
  uint64_t issued_at = 0;
  Signature quote_sig;
  Signature endorsement;

  canonical::Value Body() const;
  canonical::Value ToCanonical() const;
  static AttestationQuote FromCanonical(const canonical::Value& v);

  friend bool operator==(const AttestationQuote&,
                         const AttestationQuote&) = default;
};

AttestationQuote IssueQuote(const EnclaveIdentity& enclave,
                            const Digest& payment_digest, uint64_t now);

struct AttestationPolicy {
  PublicKey root_key;
  std::set<Digest> whitelisted_code_hashes;
  uint32_t required_quotes_k = 1;
  std::vector<PublicKey> enclave_set;
  uint64_t freshness_window_seconds = kDefaultFreshnessSeconds;

  // 1 <= k <= n, distinct enclaves, positive window.
  bool IsValid() const;

  canonical::Value ToCanonical() const;
  static AttestationPolicy FromCanonical(const canonical::Value& v);

  friend bool operator==(const AttestationPolicy&,
                         const AttestationPolicy&) = default;
};

// Per-quote checks run in this order; kQuorum is the aggregate outcome.
enum class AttestationReject {
  kSignature,
  kEndorsement,
  kCodeHash,
  kBinding,
  kFreshness,
  kQuorum,
};

std::string_view AttestationRejectName(AttestationReject r);

// First failed check of a single quote, or nullopt if it is valid. A quote
// from an enclave outside the configured set fails kEndorsement.
std::optional<AttestationReject> CheckQuote(const AttestationQuote& q,
                                            const Digest& payment_digest,
                                            const AttestationPolicy& policy,
                                            uint64_t now);

struct AttestationVerdict {
  std::optional<AttestationReject> reject;
  size_t distinct_valid = 0;

  bool accepted() const { return !reject.has_value(); }
};

// Accept iff at least k distinct enclaves contributed a valid quote.
// Otherwise kQuorum if any quote was valid (or none were given), else the
// earliest-ordered per-quote failure.
AttestationVerdict VerifyQuotes(const std::vector<AttestationQuote>& quotes,
                                const Digest& payment_digest,
                                const AttestationPolicy& policy, uint64_t now);

}  // namespace tiva::attestation
