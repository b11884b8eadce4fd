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

// The two compliance statements built on the range proof: a committed limit
// is at least a public threshold, and a public price does not exceed a
// committed limit. Both prove the range of C * g^-x for the public x.

#include <cstdint>
#include <string_view>

#include "tiva/zk/range_proof.h"

namespace tiva::zk {

enum class StatementKind { kAtLeast, kPriceWithinLimit };

// Binds a proof to the statement kind, its public value and the caller's
// context (a credential or mandate id plus payment nonce).
Digest StatementContext(StatementKind kind, uint64_t public_value,
                        const Digest& context);

struct AtLeastProof {
  Commitment limit_commitment;
  RangeProof proof;
};

// Throws kValueRange or kThresholdExceedsLimit.
AtLeastProof ProveAtLeast(uint64_t limit, const Scalar& blinding,
                          uint64_t threshold, const Digest& context);
bool VerifyAtLeast(const Commitment& limit_commitment, uint64_t threshold,
                   const RangeProof& proof, const Digest& context) noexcept;

// Throws kValueRange or kPriceExceedsLimit.
RangeProof ProvePriceWithinLimit(uint64_t limit, const Scalar& blinding,
                                 uint64_t price, const Digest& context);
bool VerifyPriceWithinLimit(const Commitment& limit_commitment, uint64_t price,
                            const RangeProof& proof,
                            const Digest& context) noexcept;

}  // namespace tiva::zk
