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
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tiva/crypto/canonical.h"
#include "tiva/crypto/hash.h"
#include "tiva/crypto/sign.h"

namespace tiva::identity {

using crypto::Digest;
using crypto::PublicKey;
using crypto::Signature;

// did:tiva:<hex of hash("tiva/did", public_key)>.
class Did {
 public:
  static constexpr std::string_view kPrefix = "did:tiva:";

  Did() = default;

  static Did FromPublicKey(const PublicKey& key);
  // Throws kBadDid unless the string matches did:tiva:[0-9a-f]{64}.
  static Did Parse(std::string_view text);
  static std::optional<Did> TryParse(std::string_view text);

  const Digest& id() const { return id_; }
  std::string ToString() const;

  friend auto operator<=>(const Did&, const Did&) = default;
  friend bool operator==(const Did&, const Did&) = default;

 private:
  explicit Did(const Digest& id) : id_(id) {}

  Digest id_;
};

struct DidDocument {
  Did did;
  PublicKey public_key;
  Did controller;  // self for users, the user for agents
  uint64_t created_at = 0;

  static DidDocument ForUser(const PublicKey& key, uint64_t created_at);
  static DidDocument ForAgent(const PublicKey& key, const Did& controller,
                              uint64_t created_at);

  bool IsSelfControlled() const { return controller == did; }
  bool IsConsistent() const { return did == Did::FromPublicKey(public_key); }

  canonical::Value ToCanonical() const;
  static DidDocument FromCanonical(const canonical::Value& v);

  friend bool operator==(const DidDocument&, const DidDocument&) = default;
};

// Content-addressed DID registry. Mutations validate fully before changing
// anything, so a throwing call leaves the registry untouched.
class DidRegistry {
 public:
  // Returns true if the document was newly added, false for an identical
  // re-registration. Throws kDidConflict or kBadDocument.
  bool Register(const DidDocument& doc);

  // Throws kNotFound.
  const DidDocument& Resolve(const Did& did) const;
  const DidDocument* Find(const Did& did) const;

  // True iff `subject` is registered with `controller` as its (user)
  // controller, and `controller` is a registered self-controlled user.
  bool Controls(const Did& controller, const Did& subject) const;

  size_t size() const { return docs_.size(); }
  canonical::Value Snapshot() const;

 private:
  std::map<Did, DidDocument> docs_;
};

// On-ledger anchors of issued credential digests and their issuers.
class CredentialAnchors {
 public:
  // Returns false if already anchored with the same issuer; throws
  // kDidConflict if anchored with a different one.
  bool Anchor(const Digest& credential_id, const Did& issuer);
  std::optional<Did> IssuerOf(const Digest& credential_id) const;

 private:
  std::map<Digest, Did> issuers_;
};

struct RevocationEntry {
  Digest credential_id;
  uint64_t height = 0;
};

// Monotone set of revoked credential digests.
class RevocationRegistry {
 public:
  // Bytes the issuer signs to revoke: canonical {"revoke": <digest hex>}.
  static Bytes RevocationMessage(const Digest& credential_id);

  // Verifies `issuer_signature` against the anchored issuer's registered key.
  // Returns true if newly revoked, false if it already was (idempotent).
  // Throws kUnknownIssuer or kBadSignature; on throw nothing changes.
  bool Revoke(const Signature& issuer_signature, const Digest& credential_id,
              const CredentialAnchors& anchors, const DidRegistry& dids,
              uint64_t height);

  bool IsRevoked(const Digest& credential_id) const {
    return revoked_.contains(credential_id);
  }
  const std::vector<RevocationEntry>& entries() const { return entries_; }
  canonical::Value Snapshot() const;

 private:
  std::set<Digest> revoked_;
  std::vector<RevocationEntry> entries_;
};

}  // namespace tiva::identity
