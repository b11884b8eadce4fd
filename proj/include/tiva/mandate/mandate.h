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
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "tiva/crypto/canonical.h"
#include "tiva/crypto/sign.h"
#include "tiva/identity/identity.h"
#include "tiva/zk/range_proof.h"

namespace tiva::mandate {

using crypto::Digest;
using crypto::Signature;
using identity::Did;

// What the user authorizes. Exactly one of the two price fields is set: the
// plaintext cap, or a commitment to it for wallets in zk mode.
struct MandateTerms {
  Did agent;
  std::string item_id;
  std::optional<uint64_t> max_unit_price_minor;
  std::optional<zk::Commitment> price_limit_commitment;
  uint64_t max_quantity = 0;
  std::string vendor_account;
  std::string currency;
  uint64_t expires_at = 0;

  bool IsValid() const;
  bool IsZk() const { return price_limit_commitment.has_value(); }

  friend bool operator==(const MandateTerms&, const MandateTerms&) = default;
};

struct IntentMandate {
  Digest mandate_id;  // hash("tiva/mandate", canonical body)
  Did issuer;
  uint64_t issued_at = 0;
  MandateTerms terms;
  Signature signature;

  canonical::Value Body() const;
  Digest ComputeId() const;

  // Signed structure; this is also the `.mandate` file content.
  canonical::Value ToCanonical() const;
  static IntentMandate FromCanonical(const canonical::Value& v);

  friend bool operator==(const IntentMandate&, const IntentMandate&) = default;
};

// Throws kBadBody or kAgentNotControlled.
IntentMandate SignMandate(const crypto::KeyPair& user, const MandateTerms& terms,
                          uint64_t now, const identity::DidRegistry& dids);

// Id matches the body and the signature verifies under `issuer_key`.
bool VerifyMandateSignature(const IntentMandate& m,
                            const crypto::PublicKey& issuer_key);

struct MandatePayment {
  std::string item_id;
  uint64_t unit_price_minor = 0;
  uint64_t quantity = 0;
  std::string payee;
  std::string currency;
};

// Checked in this order; the first failure is reported.
enum class MandateReject { kExpired, kItem, kVendor, kCurrency, kPrice, kQuantity };

std::string_view MandateRejectName(MandateReject r);

struct MandateDecision {
  std::optional<MandateReject> reject;
  uint64_t consumed_after = 0;

  bool approved() const { return !reject.has_value(); }
};

// Plaintext mandates. A zk mandate always fails the price check here.
MandateDecision CheckMandate(const IntentMandate& m, const MandatePayment& p,
                             uint64_t consumed, uint64_t now);

// Zk mandates: the price check is the proof that the public unit price does
// not exceed the committed cap, bound to `proof_context`.
MandateDecision CheckMandateZk(const IntentMandate& m, const MandatePayment& p,
                               const zk::RangeProof& price_proof,
                               const Digest& proof_context, uint64_t consumed,
                               uint64_t now);

// Context binding a price proof to one mandate and one payment nonce.
Digest PriceProofContext(const Digest& mandate_id, const Digest& nonce);

// Quantity consumed per mandate. Values only grow.
class MandateConsumption {
 public:
  uint64_t Consumed(const Digest& mandate_id) const;
  // Throws kOverflow if `consumed` would decrease the recorded value.
  void Set(const Digest& mandate_id, uint64_t consumed);

  const std::map<Digest, uint64_t>& entries() const { return consumed_; }
  canonical::Value Snapshot() const;

  friend bool operator==(const MandateConsumption&,
                         const MandateConsumption&) = default;

 private:
  std::map<Digest, uint64_t> consumed_;
};

}  // namespace tiva::mandate
