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
#include <string_view>

#include "tiva/common/bytes.h"

namespace tiva::crypto {

struct DigestTag;
using Digest = FixedBytes<32, DigestTag>;

inline constexpr size_t kMaxDomainTagLength = 32;

// SHA-256(len(tag) || tag || payload) with a one-byte length prefix.
// Throws kTagLength for an empty tag or one longer than 32 bytes.
Digest Hash(std::string_view domain_tag, ByteSpan payload);

inline Digest Hash(std::string_view domain_tag, std::string_view payload) {
  return Hash(domain_tag, AsBytes(payload));
}

// SHA-512 with the same framing; used for wide reduction into scalars.
std::array<uint8_t, 64> WideHash(std::string_view domain_tag,
                                 ByteSpan payload);

// Calls sodium_init() once; safe from any thread.
void EnsureSodium();

}  // namespace tiva::crypto
