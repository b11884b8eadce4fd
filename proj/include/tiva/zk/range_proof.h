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

// Pedersen commitments over ristretto255 and a bit-decomposition range proof.
//
// For C = g^v h^r the prover commits to each bit, C_i = g^{b_i} h^{r_i}, and
// gives a two-branch OR proof that each C_i opens to 0 or 1. A Schnorr proof
// of knowledge of log_h(C / prod C_i^{2^i}) links the bits to C. All
// challenges come from one Fiat-Shamir hash over the full transcript; the
// two branch challenges of every bit XOR to it. Challenges are 128 bits.
//
// Proof size for n = 32: 32 bit commitments + 32 * (2 points, 2 challenges,
// 2 scalars) + 1 point + 1 scalar = 6208 bytes before hex encoding.

#include <array>
#include <cstdint>
#include <vector>

#include "tiva/crypto/canonical.h"
#include "tiva/crypto/group.h"
#include "tiva/crypto/hash.h"

namespace tiva::zk {

using crypto::Digest;
using crypto::GroupElement;
using crypto::Scalar;

inline constexpr int kRangeBits = 32;
inline constexpr uint64_t kRangeLimit = uint64_t{1} << kRangeBits;

using PointBytes = std::array<uint8_t, 32>;
using ScalarBytes = std::array<uint8_t, 32>;
using ChallengeBytes = std::array<uint8_t, 16>;

class Commitment {
 public:
  Commitment() = default;
  explicit Commitment(const GroupElement& element) : element_(element) {}

  // g^value h^blinding. Throws kValueRange unless value < 2^32.
  static Commitment Commit(uint64_t value, const Scalar& blinding);

  const GroupElement& element() const { return element_; }
  std::string ToHex() const { return element_.ToHex(); }
  // Throws kParseError.
  static Commitment FromHex(std::string_view hex);

  // Shifts the committed value by -amount (C * g^-amount).
  Commitment Minus(uint64_t amount) const;

  Commitment operator+(const Commitment& o) const {
    return Commitment(element_ + o.element_);
  }

  friend bool operator==(const Commitment&, const Commitment&) = default;

 private:
  GroupElement element_;
};

struct BitProof {
  PointBytes commitment{};  // C_i
  PointBytes a0{};
  PointBytes a1{};
  ChallengeBytes c0{};
  ChallengeBytes c1{};
  ScalarBytes z0{};
  ScalarBytes z1{};

  friend bool operator==(const BitProof&, const BitProof&) = default;
};

// Kept as raw encodings so that verification, not parsing, decides validity.
struct RangeProof {
  std::vector<BitProof> bits;
  PointBytes link_commitment{};  // T = h^k
  ScalarBytes link_response{};   // k + e * delta

  canonical::Value ToCanonical() const;
  // Throws kParseError on structural problems (bad hex, wrong widths).
  static RangeProof FromCanonical(const canonical::Value& v);

  friend bool operator==(const RangeProof&, const RangeProof&) = default;
};

// Deterministic in (value, blinding, context). Throws kValueRange.
RangeProof ProveRange(uint64_t value, const Scalar& blinding,
                      const Digest& context);

// Never throws; malformed proofs are rejected.
bool VerifyRange(const Commitment& commitment, const RangeProof& proof,
                 const Digest& context) noexcept;

}  // namespace tiva::zk
