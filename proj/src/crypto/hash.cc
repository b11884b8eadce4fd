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

#include "tiva/crypto/hash.h"

#include <sodium.h>

#include <cstdlib>

#include "tiva/common/error.h"

namespace tiva::crypto {

void EnsureSodium() {
  static const bool ready = [] {
    if (sodium_init() < 0) std::abort();
    return true;
  }();
  (void)ready;
}

namespace {

void CheckTag(std::string_view tag) {
  if (tag.empty() || tag.size() > kMaxDomainTagLength) {
    throw Error(ErrorCode::kTagLength,
                "domain tag must be 1..32 bytes, got " +
                    std::to_string(tag.size()));
  }
}

}  // namespace

Digest Hash(std::string_view domain_tag, ByteSpan payload) {
  CheckTag(domain_tag);
  EnsureSodium();
  crypto_hash_sha256_state st;
  crypto_hash_sha256_init(&st);
  const uint8_t len = static_cast<uint8_t>(domain_tag.size());
  crypto_hash_sha256_update(&st, &len, 1);
  crypto_hash_sha256_update(
      &st, reinterpret_cast<const uint8_t*>(domain_tag.data()),
      domain_tag.size());
  crypto_hash_sha256_update(&st, payload.data(), payload.size());
  Digest out;
  crypto_hash_sha256_final(&st, out.bytes.data());
  return out;
}

std::array<uint8_t, 64> WideHash(std::string_view domain_tag,
                                 ByteSpan payload) {
  CheckTag(domain_tag);
  EnsureSodium();
  crypto_hash_sha512_state st;
  crypto_hash_sha512_init(&st);
  const uint8_t len = static_cast<uint8_t>(domain_tag.size());
  crypto_hash_sha512_update(&st, &len, 1);
  crypto_hash_sha512_update(
      &st, reinterpret_cast<const uint8_t*>(domain_tag.data()),
      domain_tag.size());
  crypto_hash_sha512_update(&st, payload.data(), payload.size());
  std::array<uint8_t, 64> out{};
  crypto_hash_sha512_final(&st, out.data());
  return out;
}

}  // namespace tiva::crypto
