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

#include "tiva/crypto/sign.h"

#include <sodium.h>

#include "tiva/common/error.h"
#include "tiva/crypto/hash.h"

namespace tiva::crypto {

namespace {

// Group order L, little-endian.
constexpr std::array<uint8_t, 32> kOrder = {
    0xed, 0xd3, 0xf5, 0x5c, 0x1a, 0x63, 0x12, 0x58, 0xd6, 0x9c, 0xf7,
    0xa2, 0xde, 0xf9, 0xde, 0x14, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,
    0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x10};

bool ScalarIsCanonical(const uint8_t* s) {
  for (int i = 31; i >= 0; --i) {
    if (s[i] < kOrder[i]) return true;
    if (s[i] > kOrder[i]) return false;
  }
  return false;  // equal to L
}

// The point validity check costs about as much as the verification itself
// and the same few keys are checked over and over, so remember recent
// successes. Only valid keys are cached; a miss just recomputes.
bool IsValidKey(const PublicKey& key) {
  constexpr size_t kSlots = 64;
  thread_local std::array<PublicKey, kSlots> recent{};
  thread_local std::array<bool, kSlots> used{};
  const size_t slot = key.bytes[0] % kSlots;  // keys are uniformly random
  if (used[slot] && recent[slot] == key) return true;
  if (crypto_core_ed25519_is_valid_point(key.bytes.data()) != 1) return false;
  recent[slot] = key;
  used[slot] = true;
  return true;
}

// Credentials and mandates are re-verified on every payment that uses them.
// Successful (key, signature, message) checks are remembered by their
// SHA-256, so a hit needs a hash collision to be wrong.
class VerifiedCache {
 public:
  static Digest Key(const PublicKey& key, ByteSpan message,
                    const Signature& sig) {
    crypto_hash_sha256_state st;
    crypto_hash_sha256_init(&st);
    crypto_hash_sha256_update(&st, key.bytes.data(), key.bytes.size());
    crypto_hash_sha256_update(&st, sig.bytes.data(), sig.bytes.size());
    crypto_hash_sha256_update(&st, message.data(), message.size());
    Digest d;
    crypto_hash_sha256_final(&st, d.bytes.data());
    return d;
  }
  bool Contains(const Digest& d) const {
    const size_t slot = d.bytes[0] % kSlots;
    return used_[slot] && slots_[slot] == d;
  }
  void Insert(const Digest& d) {
    const size_t slot = d.bytes[0] % kSlots;
    slots_[slot] = d;
    used_[slot] = true;
  }

 private:
  static constexpr size_t kSlots = 128;
  std::array<Digest, kSlots> slots_{};
  std::array<bool, kSlots> used_{};
};

}  // namespace

KeyPair KeyPair::FromSeed(ByteSpan seed) {
  if (seed.size() != Seed::kSize) {
    throw Error(ErrorCode::kSeedLength,
                "expected 32 bytes, got " + std::to_string(seed.size()));
  }
  EnsureSodium();
  KeyPair kp;
  std::copy(seed.begin(), seed.end(), kp.seed_.bytes.begin());
  crypto_sign_seed_keypair(kp.public_key_.bytes.data(), kp.expanded_.data(),
                           kp.seed_.bytes.data());
  return kp;
}

Signature KeyPair::Sign(ByteSpan message) const {
  Signature sig;
  crypto_sign_detached(sig.bytes.data(), nullptr, message.data(),
                       message.size(), expanded_.data());
  return sig;
}

bool Verify(const PublicKey& public_key, ByteSpan message,
            const Signature& signature) {
  EnsureSodium();
  if (!IsValidKey(public_key)) {
    throw Error(ErrorCode::kMalformedKey, public_key.ToHex());
  }
  if (!ScalarIsCanonical(signature.bytes.data() + 32)) {
    throw Error(ErrorCode::kMalformedSignature, "non-canonical scalar");
  }
  thread_local VerifiedCache cache;
  const Digest key = VerifiedCache::Key(public_key, message, signature);
  if (cache.Contains(key)) return true;
  const bool ok = crypto_sign_verify_detached(signature.bytes.data(),
                                              message.data(), message.size(),
                                              public_key.bytes.data()) == 0;
  if (ok) cache.Insert(key);
  return ok;
}

bool IsValidSignature(const PublicKey& public_key, ByteSpan message,
                      const Signature& signature) noexcept {
  try {
    return Verify(public_key, message, signature);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace tiva::crypto
