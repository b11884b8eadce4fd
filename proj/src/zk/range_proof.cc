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

#include "tiva/zk/range_proof.h"

#include <algorithm>
#include <optional>

#include "tiva/common/error.h"

namespace tiva::zk {

namespace {

constexpr uint8_t kRoleBitBlinding = 'r';
constexpr uint8_t kRoleRealNonce = 'k';
constexpr uint8_t kRoleFakeChallenge = 'c';
constexpr uint8_t kRoleFakeResponse = 'z';
constexpr uint8_t kRoleLinkNonce = 'l';

void AppendUint(Bytes& out, uint64_t v, int width) {
  for (int i = 0; i < width; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

// Prover-private derivation of every random-looking value in the proof.
class NonceSource {
 public:
  NonceSource(uint64_t value, const Scalar& blinding, const Digest& context) {
    Append(prefix_, blinding.bytes());
    AppendUint(prefix_, value, 8);
    Append(prefix_, context.span());
  }

  Bytes Input(int index, uint8_t role) const {
    Bytes in = prefix_;
    AppendUint(in, static_cast<uint64_t>(index), 4);
    in.push_back(role);
    return in;
  }

  Scalar ScalarFor(int index, uint8_t role) const {
    return Scalar::HashToScalar("tiva/zk/nonce", Input(index, role));
  }

  ChallengeBytes ChallengeFor(int index, uint8_t role) const {
    Digest d = crypto::Hash("tiva/zk/nonce", Input(index, role));
    ChallengeBytes c;
    std::copy_n(d.bytes.begin(), c.size(), c.begin());
    return c;
  }

 private:
  Bytes prefix_;
};

Scalar ChallengeScalar(const ChallengeBytes& c) {
  std::array<uint8_t, 32> padded{};
  std::copy(c.begin(), c.end(), padded.begin());
  return *Scalar::FromCanonical(padded);
}

ChallengeBytes Xor(const ChallengeBytes& a, const ChallengeBytes& b) {
  ChallengeBytes out;
  for (size_t i = 0; i < out.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

ChallengeBytes GlobalChallenge(const Digest& context,
                               const PointBytes& commitment,
                               const std::vector<BitProof>& bits,
                               const PointBytes& link_commitment) {
  Bytes transcript;
  transcript.reserve(32 * (3 + 3 * bits.size()) + 4);
  Append(transcript, context.span());
  Append(transcript, commitment);
  AppendUint(transcript, bits.size(), 4);
  for (const BitProof& b : bits) {
    Append(transcript, b.commitment);
    Append(transcript, b.a0);
    Append(transcript, b.a1);
  }
  Append(transcript, link_commitment);
  Digest d = crypto::Hash("tiva/zk/range", transcript);
  ChallengeBytes e;
  std::copy_n(d.bytes.begin(), e.size(), e.begin());
  return e;
}

// sum_i 2^i C_i by Horner's rule.
GroupElement WeightedBitSum(const std::vector<GroupElement>& bit_commitments) {
  GroupElement acc;
  for (auto it = bit_commitments.rbegin(); it != bit_commitments.rend(); ++it) {
    acc = acc.Double() + *it;
  }
  return acc;
}

template <size_t N>
std::array<uint8_t, N> HexArray(const canonical::Value& v,
                                std::string_view key) {
  Bytes raw = canonical::GetBytes(v, key);
  if (raw.size() != N) {
    throw Error(ErrorCode::kParseError,
                "field '" + std::string(key) + "' has the wrong width");
  }
  std::array<uint8_t, N> out;
  std::copy(raw.begin(), raw.end(), out.begin());
  return out;
}

}  // namespace

Commitment Commitment::Commit(uint64_t value, const Scalar& blinding) {
  if (value >= kRangeLimit) {
    throw Error(ErrorCode::kValueRange, std::to_string(value));
  }
  return Commitment(GroupElement::MulGenerator(Scalar::FromUint64(value)) +
                    GroupElement::MulBlindingGenerator(blinding));
}

Commitment Commitment::FromHex(std::string_view hex) {
  auto e = GroupElement::FromHex(hex);
  if (!e) throw Error(ErrorCode::kParseError, "bad commitment encoding");
  return Commitment(*e);
}

Commitment Commitment::Minus(uint64_t amount) const {
  return Commitment(element_ -
                    GroupElement::MulGenerator(Scalar::FromUint64(amount)));
}

canonical::Value RangeProof::ToCanonical() const {
  canonical::Value list = canonical::Value::array();
  for (const BitProof& b : bits) {
    list.push_back({{"a0", ToHex(b.a0)},
                    {"a1", ToHex(b.a1)},
                    {"c0", ToHex(b.c0)},
                    {"c1", ToHex(b.c1)},
                    {"commitment", ToHex(b.commitment)},
                    {"z0", ToHex(b.z0)},
                    {"z1", ToHex(b.z1)}});
  }
  return {{"bits", list},
          {"link_commitment", ToHex(link_commitment)},
          {"link_response", ToHex(link_response)}};
}

RangeProof RangeProof::FromCanonical(const canonical::Value& v) {
  const canonical::Value& list = canonical::Field(v, "bits");
  if (!list.is_array() || list.size() > 256) {
    throw Error(ErrorCode::kParseError, "'bits' must be a short list");
  }
  RangeProof p;
  for (const canonical::Value& item : list) {
    BitProof b;
    b.a0 = HexArray<32>(item, "a0");
    b.a1 = HexArray<32>(item, "a1");
    b.c0 = HexArray<16>(item, "c0");
    b.c1 = HexArray<16>(item, "c1");
    b.commitment = HexArray<32>(item, "commitment");
    b.z0 = HexArray<32>(item, "z0");
    b.z1 = HexArray<32>(item, "z1");
    p.bits.push_back(b);
  }
  p.link_commitment = HexArray<32>(v, "link_commitment");
  p.link_response = HexArray<32>(v, "link_response");
  return p;
}

RangeProof ProveRange(uint64_t value, const Scalar& blinding,
                      const Digest& context) {
  const Commitment commitment = Commitment::Commit(value, blinding);
  const NonceSource nonces(value, blinding, context);
  const GroupElement& g = GroupElement::Generator();

  RangeProof proof;
  proof.bits.resize(kRangeBits);
  std::vector<Scalar> bit_blindings(kRangeBits);
  std::vector<Scalar> real_nonces(kRangeBits);
  Scalar weighted_blinding;  // sum_i 2^i r_i
  Scalar weight = Scalar::FromUint64(1);
  const Scalar two = Scalar::FromUint64(2);

  for (int i = 0; i < kRangeBits; ++i) {
    const int bit = static_cast<int>((value >> i) & 1);
    const Scalar r = nonces.ScalarFor(i, kRoleBitBlinding);
    bit_blindings[i] = r;
    weighted_blinding = weighted_blinding + weight * r;
    weight = weight * two;

    GroupElement c_i = GroupElement::MulBlindingGenerator(r);
    if (bit == 1) c_i = c_i + g;

    // Real branch: A_b = h^k.
    const Scalar k = nonces.ScalarFor(i, kRoleRealNonce);
    real_nonces[i] = k;
    const GroupElement a_real = GroupElement::MulBlindingGenerator(k);

    // Simulated branch j = 1 - b: pick (c_j, z_j) and solve
    // A_j = h^{z_j} - c_j (C_i - j g) = h^{z_j - c_j r} - c_j (b - j) g.
    const ChallengeBytes c_fake = nonces.ChallengeFor(i, kRoleFakeChallenge);
    const Scalar z_fake = nonces.ScalarFor(i, kRoleFakeResponse);
    const Scalar c_fake_s = ChallengeScalar(c_fake);
    GroupElement a_fake =
        GroupElement::MulBlindingGenerator(z_fake - c_fake_s * r);
    const GroupElement c_g = GroupElement::MulGenerator(c_fake_s);
    a_fake = bit == 1 ? a_fake - c_g : a_fake + c_g;

    BitProof& bp = proof.bits[i];
    bp.commitment = c_i.Encode();
    if (bit == 0) {
      bp.a0 = a_real.Encode();
      bp.a1 = a_fake.Encode();
      bp.c1 = c_fake;
      bp.z1 = z_fake.bytes();
    } else {
      bp.a0 = a_fake.Encode();
      bp.a1 = a_real.Encode();
      bp.c0 = c_fake;
      bp.z0 = z_fake.bytes();
    }
  }

  const Scalar link_nonce = nonces.ScalarFor(kRangeBits, kRoleLinkNonce);
  proof.link_commitment = GroupElement::MulBlindingGenerator(link_nonce).Encode();

  const ChallengeBytes e = GlobalChallenge(
      context, commitment.element().Encode(), proof.bits, proof.link_commitment);

  for (int i = 0; i < kRangeBits; ++i) {
    const int bit = static_cast<int>((value >> i) & 1);
    BitProof& bp = proof.bits[i];
    if (bit == 0) {
      bp.c0 = Xor(e, bp.c1);
      bp.z0 = (real_nonces[i] + ChallengeScalar(bp.c0) * bit_blindings[i]).bytes();
    } else {
      bp.c1 = Xor(e, bp.c0);
      bp.z1 = (real_nonces[i] + ChallengeScalar(bp.c1) * bit_blindings[i]).bytes();
    }
  }

  const Scalar delta = blinding - weighted_blinding;
  proof.link_response = (link_nonce + ChallengeScalar(e) * delta).bytes();
  return proof;
}

bool VerifyRange(const Commitment& commitment, const RangeProof& proof,
                 const Digest& context) noexcept {
  try {
    if (proof.bits.size() != static_cast<size_t>(kRangeBits)) return false;
    const ChallengeBytes e = GlobalChallenge(
        context, commitment.element().Encode(), proof.bits,
        proof.link_commitment);
    const GroupElement& g = GroupElement::Generator();

    std::vector<GroupElement> bit_commitments;
    bit_commitments.reserve(proof.bits.size());
    for (const BitProof& bp : proof.bits) {
      if (Xor(bp.c0, bp.c1) != e) return false;
      auto c_i = GroupElement::Decode(bp.commitment);
      auto z0 = Scalar::FromCanonical(bp.z0);
      auto z1 = Scalar::FromCanonical(bp.z1);
      if (!c_i || !z0 || !z1) return false;
      // A_0 = h^{z0} - c0 C_i,  A_1 = h^{z1} - c1 (C_i - g).
      const GroupElement a0 = GroupElement::MulBlindingGenerator(*z0) -
                              *c_i * ChallengeScalar(bp.c0);
      if (a0.Encode() != bp.a0) return false;
      const GroupElement a1 = GroupElement::MulBlindingGenerator(*z1) -
                              (*c_i - g) * ChallengeScalar(bp.c1);
      if (a1.Encode() != bp.a1) return false;
      bit_commitments.push_back(*c_i);
    }

    auto z = Scalar::FromCanonical(proof.link_response);
    if (!z) return false;
    const GroupElement d = commitment.element() - WeightedBitSum(bit_commitments);
    const GroupElement t =
        GroupElement::MulBlindingGenerator(*z) - d * ChallengeScalar(e);
    return t.Encode() == proof.link_commitment;
  } catch (...) {
    return false;
  }
}

}  // namespace tiva::zk
