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

#include "tiva/crypto/group.h"

#include <sodium.h>

#include <algorithm>

#include "tiva/common/error.h"
#include "tiva/crypto/hash.h"

namespace tiva::crypto {

Scalar Scalar::FromUint64(uint64_t v) {
  Scalar s;
  for (int i = 0; i < 8; ++i) {
    s.bytes_[i] = static_cast<uint8_t>(v >> (8 * i));
  }
  return s;
}

std::optional<Scalar> Scalar::FromCanonical(ByteSpan bytes) {
  if (bytes.size() != 32) return std::nullopt;
  EnsureSodium();
  std::array<uint8_t, 64> wide{};
  std::copy(bytes.begin(), bytes.end(), wide.begin());
  Scalar reduced = FromWide(wide);
  if (!std::equal(bytes.begin(), bytes.end(), reduced.bytes_.begin())) {
    return std::nullopt;
  }
  return reduced;
}

Scalar Scalar::FromBytes(ByteSpan bytes) {
  auto s = FromCanonical(bytes);
  if (!s) throw Error(ErrorCode::kParseError, "non-canonical scalar");
  return *s;
}

std::optional<Scalar> Scalar::FromHex(std::string_view hex) {
  auto raw = ::tiva::FromHex(hex);
  if (!raw) return std::nullopt;
  return FromCanonical(*raw);
}

Scalar Scalar::FromWide(const std::array<uint8_t, 64>& wide) {
  EnsureSodium();
  Scalar s;
  crypto_core_ristretto255_scalar_reduce(s.bytes_.data(), wide.data());
  return s;
}

Scalar Scalar::HashToScalar(std::string_view domain_tag, ByteSpan payload) {
  return FromWide(WideHash(domain_tag, payload));
}

bool Scalar::IsZero() const {
  return std::all_of(bytes_.begin(), bytes_.end(),
                     [](uint8_t b) { return b == 0; });
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar r;
  crypto_core_ristretto255_scalar_add(r.bytes_.data(), bytes_.data(),
                                      o.bytes_.data());
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar r;
  crypto_core_ristretto255_scalar_sub(r.bytes_.data(), bytes_.data(),
                                      o.bytes_.data());
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar r;
  crypto_core_ristretto255_scalar_mul(r.bytes_.data(), bytes_.data(),
                                      o.bytes_.data());
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r;
  crypto_core_ristretto255_scalar_negate(r.bytes_.data(), bytes_.data());
  return r;
}

namespace {

constexpr std::array<uint8_t, 32> kBasePointEncoding = {
    0xe2, 0xf2, 0xae, 0x0a, 0x6a, 0xbc, 0x4e, 0x71, 0xa8, 0x84, 0xa9,
    0x61, 0xc5, 0x00, 0x51, 0x5f, 0x58, 0xe3, 0x0b, 0x6a, 0xa5, 0x82,
    0xdd, 0x8d, 0xb6, 0xa6, 0x59, 0x45, 0xe0, 0x8d, 0x2d, 0x76};

constexpr std::string_view kBlindingGeneratorTag = "tiva/zk/generator-h";

detail::ExtendedPoint DecodeOrDie(const uint8_t* bytes) {
  detail::ExtendedPoint p;
  if (!detail::RistrettoDecode(bytes, &p)) std::abort();
  return p;
}

const detail::FixedBaseTable& GeneratorTable() {
  static const detail::FixedBaseTable table(
      DecodeOrDie(kBasePointEncoding.data()));
  return table;
}

const detail::FixedBaseTable& BlindingTable() {
  static const detail::FixedBaseTable table(
      DecodeOrDie(GroupElement::BlindingGenerator().Encode().data()));
  return table;
}

}  // namespace

GroupElement::GroupElement() : p_(detail::PointIdentity()) {}

const GroupElement& GroupElement::Generator() {
  static const GroupElement g(DecodeOrDie(kBasePointEncoding.data()));
  return g;
}

const GroupElement& GroupElement::BlindingGenerator() {
  static const GroupElement h =
      FromUniformBytes(WideHash(kBlindingGeneratorTag, ByteSpan{}));
  return h;
}

GroupElement GroupElement::MulGenerator(const Scalar& s) {
  return GroupElement(GeneratorTable().Mul(s.bytes().data()));
}

GroupElement GroupElement::MulBlindingGenerator(const Scalar& s) {
  return GroupElement(BlindingTable().Mul(s.bytes().data()));
}

std::optional<GroupElement> GroupElement::Decode(ByteSpan encoded) {
  if (encoded.size() != 32) return std::nullopt;
  detail::ExtendedPoint p;
  if (!detail::RistrettoDecode(encoded.data(), &p)) return std::nullopt;
  return GroupElement(p);
}

std::optional<GroupElement> GroupElement::FromHex(std::string_view hex) {
  auto raw = ::tiva::FromHex(hex);
  if (!raw) return std::nullopt;
  return Decode(*raw);
}

GroupElement GroupElement::FromUniformBytes(
    const std::array<uint8_t, 64>& bytes) {
  EnsureSodium();
  std::array<uint8_t, 32> encoded{};
  crypto_core_ristretto255_from_hash(encoded.data(), bytes.data());
  return GroupElement(DecodeOrDie(encoded.data()));
}

std::array<uint8_t, 32> GroupElement::Encode() const {
  return detail::RistrettoEncode(p_);
}

bool GroupElement::IsIdentity() const {
  return detail::RistrettoEqual(p_, detail::PointIdentity());
}

GroupElement GroupElement::operator+(const GroupElement& o) const {
  return GroupElement(detail::PointAdd(p_, o.p_));
}

GroupElement GroupElement::operator-(const GroupElement& o) const {
  return GroupElement(detail::PointSub(p_, o.p_));
}

GroupElement GroupElement::operator-() const {
  return GroupElement(detail::PointNegate(p_));
}

GroupElement GroupElement::operator*(const Scalar& s) const {
  return GroupElement(detail::ScalarMul(p_, s.bytes().data()));
}

GroupElement GroupElement::Double() const {
  return GroupElement(detail::PointDouble(p_));
}

bool operator==(const GroupElement& a, const GroupElement& b) {
  return detail::RistrettoEqual(a.p_, b.p_);
}

}  // namespace tiva::crypto
