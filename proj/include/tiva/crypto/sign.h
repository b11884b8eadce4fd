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

#include <array>
#include <cstdint>

#include "tiva/common/bytes.h"

namespace tiva::crypto {

struct PublicKeyTag;
struct SignatureTag;
struct SeedTag;
using PublicKey = FixedBytes<32, PublicKeyTag>;
using Signature = FixedBytes<64, SignatureTag>;
using Seed = FixedBytes<32, SeedTag>;

// Ed25519 key pair. Signing is deterministic (RFC 8032).
class KeyPair {
 public:
  // Throws kSeedLength unless the seed is exactly 32 bytes.
  static KeyPair FromSeed(ByteSpan seed);
  static KeyPair FromSeed(const Seed& seed) { return FromSeed(seed.span()); }

  const PublicKey& public_key() const { return public_key_; }
  const Seed& seed() const { return seed_; }

  Signature Sign(ByteSpan message) const;

 private:
  KeyPair() = default;

  Seed seed_;
  std::array<uint8_t, 64> expanded_{};
  PublicKey public_key_;
};

// Returns false when the signature does not verify. Throws kMalformedKey if
// the public key is not a valid curve point and kMalformedSignature if the
// signature scalar is not canonical.
bool Verify(const PublicKey& public_key, ByteSpan message,
            const Signature& signature);

// Verify() that folds malformed inputs into `false`.
bool IsValidSignature(const PublicKey& public_key, ByteSpan message,
                      const Signature& signature) noexcept;

}  // namespace tiva::crypto
