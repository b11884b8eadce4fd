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
#include <optional>
#include <string>
#include <string_view>

#include "tiva/common/bytes.h"
#include "tiva/crypto/detail/curve25519.h"

namespace tiva::crypto {

// Element of Z_q, q = 2^252 + 27742317777372353535851937790883648493, stored
// as 32 canonical little-endian bytes.
class Scalar {
 public:
  Scalar() = default;

  static Scalar FromUint64(uint64_t v);
  // Throws kParseError unless the bytes are a canonical encoding.
  static Scalar FromBytes(ByteSpan bytes);
  static std::optional<Scalar> FromCanonical(ByteSpan bytes);
  static std::optional<Scalar> FromHex(std::string_view hex);
  static Scalar FromWide(const std::array<uint8_t, 64>& wide);
  static Scalar HashToScalar(std::string_view domain_tag, ByteSpan payload);

  const std::array<uint8_t, 32>& bytes() const { return bytes_; }
  std::string ToHex() const { return ::tiva::ToHex(bytes_); }
  bool IsZero() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;

  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  std::array<uint8_t, 32> bytes_{};
};

// Element of the ristretto255 prime-order group, written multiplicatively
// in the commitment code (g^v h^r) but additively here.
class GroupElement {
 public:
  GroupElement();  // identity

  // Standard ristretto255 base point.
  static const GroupElement& Generator();
  // Second generator, hash-to-group of a fixed domain tag.
  static const GroupElement& BlindingGenerator();

  static GroupElement MulGenerator(const Scalar& s);
  static GroupElement MulBlindingGenerator(const Scalar& s);

  static std::optional<GroupElement> Decode(ByteSpan encoded);
  static std::optional<GroupElement> FromHex(std::string_view hex);
  // ristretto255 hash-to-group of a 64-byte uniform string.
  static GroupElement FromUniformBytes(const std::array<uint8_t, 64>& bytes);

  std::array<uint8_t, 32> Encode() const;
  std::string ToHex() const { return ::tiva::ToHex(Encode()); }
  bool IsIdentity() const;

  GroupElement operator+(const GroupElement& o) const;
  GroupElement operator-(const GroupElement& o) const;
  GroupElement operator-() const;
  GroupElement operator*(const Scalar& s) const;
  GroupElement Double() const;

  friend bool operator==(const GroupElement& a, const GroupElement& b);

 private:
  explicit GroupElement(const detail::ExtendedPoint& p) : p_(p) {}

  detail::ExtendedPoint p_;
};

}  // namespace tiva::crypto
