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

#include "tiva/identity/identity.h"

#include "tiva/common/error.h"

namespace tiva::identity {

Did Did::FromPublicKey(const PublicKey& key) {
  return Did(crypto::Hash("tiva/did", key.span()));
}

std::optional<Did> Did::TryParse(std::string_view text) {
  if (!text.starts_with(kPrefix)) return std::nullopt;
  auto id = Digest::FromHex(text.substr(kPrefix.size()));
  if (!id) return std::nullopt;
  return Did(*id);
}

Did Did::Parse(std::string_view text) {
  auto did = TryParse(text);
  if (!did) throw Error(ErrorCode::kBadDid, std::string(text));
  return *did;
}

std::string Did::ToString() const {
  return std::string(kPrefix) + id_.ToHex();
}

DidDocument DidDocument::ForUser(const PublicKey& key, uint64_t created_at) {
  Did did = Did::FromPublicKey(key);
  return {did, key, did, created_at};
}

DidDocument DidDocument::ForAgent(const PublicKey& key, const Did& controller,
                                  uint64_t created_at) {
  return {Did::FromPublicKey(key), key, controller, created_at};
}

canonical::Value DidDocument::ToCanonical() const {
  return {{"controller", controller.ToString()},
          {"created_at", created_at},
          {"did", did.ToString()},
          {"public_key", public_key.ToHex()}};
}

DidDocument DidDocument::FromCanonical(const canonical::Value& v) {
  try {
    DidDocument doc;
    doc.did = Did::Parse(canonical::GetString(v, "did"));
    doc.controller = Did::Parse(canonical::GetString(v, "controller"));
    doc.public_key = canonical::GetFixed<PublicKey>(v, "public_key");
    doc.created_at = canonical::GetUint(v, "created_at");
    return doc;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    throw Error(ErrorCode::kParseError, e.what());
  }
}

bool DidRegistry::Register(const DidDocument& doc) {
  if (auto it = docs_.find(doc.did); it != docs_.end()) {
    if (it->second.public_key != doc.public_key) {
      throw Error(ErrorCode::kDidConflict, doc.did.ToString());
    }
    if (it->second == doc) return false;
    throw Error(ErrorCode::kDidConflict,
                "document differs from the registered one");
  }
  if (!doc.IsConsistent()) {
    throw Error(ErrorCode::kBadDocument,
                "did does not match the hash of its public key");
  }
  if (!doc.IsSelfControlled()) {
    // Delegation depth is capped at user -> agent.
    const DidDocument* controller = Find(doc.controller);
    if (controller == nullptr) {
      throw Error(ErrorCode::kBadDocument, "controller is not registered");
    }
    if (!controller->IsSelfControlled()) {
      throw Error(ErrorCode::kBadDocument,
                  "controller is itself delegated (depth > 2)");
    }
  }
  docs_.emplace(doc.did, doc);
  return true;
}

const DidDocument* DidRegistry::Find(const Did& did) const {
  auto it = docs_.find(did);
  return it == docs_.end() ? nullptr : &it->second;
}

const DidDocument& DidRegistry::Resolve(const Did& did) const {
  const DidDocument* doc = Find(did);
  if (doc == nullptr) throw Error(ErrorCode::kNotFound, did.ToString());
  return *doc;
}

bool DidRegistry::Controls(const Did& controller, const Did& subject) const {
  const DidDocument* sub = Find(subject);
  const DidDocument* ctl = Find(controller);
  return sub != nullptr && ctl != nullptr && ctl->IsSelfControlled() &&
         sub->controller == controller && subject != controller;
}

canonical::Value DidRegistry::Snapshot() const {
  canonical::Value docs = canonical::Value::array();
  for (const auto& [did, doc] : docs_) docs.push_back(doc.ToCanonical());
  return {{"documents", docs}};
}

bool CredentialAnchors::Anchor(const Digest& credential_id, const Did& issuer) {
  auto [it, inserted] = issuers_.emplace(credential_id, issuer);
  if (!inserted && it->second != issuer) {
    throw Error(ErrorCode::kDidConflict,
                "credential anchored under a different issuer");
  }
  return inserted;
}

std::optional<Did> CredentialAnchors::IssuerOf(
    const Digest& credential_id) const {
  auto it = issuers_.find(credential_id);
  if (it == issuers_.end()) return std::nullopt;
  return it->second;
}

Bytes RevocationRegistry::RevocationMessage(const Digest& credential_id) {
  return canonical::Encode({{"revoke", credential_id.ToHex()}});
}

bool RevocationRegistry::Revoke(const Signature& issuer_signature,
                                const Digest& credential_id,
                                const CredentialAnchors& anchors,
                                const DidRegistry& dids, uint64_t height) {
  auto issuer = anchors.IssuerOf(credential_id);
  if (!issuer) {
    throw Error(ErrorCode::kUnknownIssuer,
                "credential " + credential_id.ToHex() + " is not anchored");
  }
  const DidDocument* doc = dids.Find(*issuer);
  if (doc == nullptr) {
    throw Error(ErrorCode::kUnknownIssuer, issuer->ToString());
  }
  if (!crypto::IsValidSignature(doc->public_key,
                                RevocationMessage(credential_id),
                                issuer_signature)) {
    throw Error(ErrorCode::kBadSignature, "revocation not signed by issuer");
  }
  if (!revoked_.insert(credential_id).second) return false;
  entries_.push_back({credential_id, height});
  return true;
}

canonical::Value RevocationRegistry::Snapshot() const {
  canonical::Value list = canonical::Value::array();
  for (const auto& e : entries_) {
    list.push_back({{"credential_id", e.credential_id.ToHex()},
                    {"height", e.height}});
  }
  return {{"revoked", list}};
}

}  // namespace tiva::identity
