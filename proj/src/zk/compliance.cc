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

#include "tiva/zk/compliance.h"

#include "tiva/common/error.h"

namespace tiva::zk {

namespace {

std::string_view KindName(StatementKind kind) {
  return kind == StatementKind::kAtLeast ? "at_least" : "price_within_limit";
}

void CheckRange(uint64_t v) {
  if (v >= kRangeLimit) throw Error(ErrorCode::kValueRange, std::to_string(v));
}

}  // namespace

Digest StatementContext(StatementKind kind, uint64_t public_value,
                        const Digest& context) {
  return crypto::Hash("tiva/zk/statement",
                      canonical::Encode({{"context", context.ToHex()},
                                         {"kind", KindName(kind)},
                                         {"value", public_value}}));
}

AtLeastProof ProveAtLeast(uint64_t limit, const Scalar& blinding,
                          uint64_t threshold, const Digest& context) {
  CheckRange(limit);
  CheckRange(threshold);
  if (threshold > limit) {
    throw Error(ErrorCode::kThresholdExceedsLimit, "");
  }
  return {Commitment::Commit(limit, blinding),
          ProveRange(limit - threshold, blinding,
                     StatementContext(StatementKind::kAtLeast, threshold,
                                      context))};
}

bool VerifyAtLeast(const Commitment& limit_commitment, uint64_t threshold,
                   const RangeProof& proof, const Digest& context) noexcept {
  if (threshold >= kRangeLimit) return false;
  return VerifyRange(
      limit_commitment.Minus(threshold), proof,
      StatementContext(StatementKind::kAtLeast, threshold, context));
}

RangeProof ProvePriceWithinLimit(uint64_t limit, const Scalar& blinding,
                                 uint64_t price, const Digest& context) {
  CheckRange(limit);
  CheckRange(price);
  if (price > limit) throw Error(ErrorCode::kPriceExceedsLimit, "");
  return ProveRange(
      limit - price, blinding,
      StatementContext(StatementKind::kPriceWithinLimit, price, context));
}

bool VerifyPriceWithinLimit(const Commitment& limit_commitment, uint64_t price,
                            const RangeProof& proof,
                            const Digest& context) noexcept {
  if (price >= kRangeLimit) return false;
  return VerifyRange(
      limit_commitment.Minus(price), proof,
      StatementContext(StatementKind::kPriceWithinLimit, price, context));
}

}  // namespace tiva::zk
