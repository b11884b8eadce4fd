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

// Arithmetic on edwards25519 in extended twisted Edwards coordinates over
// GF(2^255 - 19) with radix-2^51 limbs. Variable-time: used by the
// commitment and range-proof code, not by the signature scheme.

#include <array>
#include <cstdint>

namespace tiva::crypto::detail {

struct Fe {
  uint64_t v[5];
};

Fe FeZero();
Fe FeOne();
Fe FeFromBytes(const uint8_t in[32]);  // ignores bit 255
void FeToBytes(uint8_t out[32], const Fe& a);  // fully reduced
Fe FeAdd(const Fe& a, const Fe& b);
Fe FeSub(const Fe& a, const Fe& b);
Fe FeNeg(const Fe& a);
Fe FeMul(const Fe& a, const Fe& b);
Fe FeSq(const Fe& a);
Fe FeInvert(const Fe& a);
Fe FePow22523(const Fe& a);  // a^((p-5)/8)
bool FeIsNegative(const Fe& a);
bool FeIsZero(const Fe& a);
bool FeEqual(const Fe& a, const Fe& b);
Fe FeAbs(const Fe& a);

// Returns {was_square, r} with r = +sqrt(u/v) or +sqrt(i*u/v).
struct SqrtRatio {
  bool was_square;
  Fe root;
};
SqrtRatio SqrtRatioM1(const Fe& u, const Fe& v);

struct ExtendedPoint {
  Fe x, y, z, t;
};

// (Y+X, Y-X, Z, 2dT), ready for addition.
struct CachedPoint {
  Fe y_plus_x, y_minus_x, z, t2d;
};

ExtendedPoint PointIdentity();
CachedPoint ToCached(const ExtendedPoint& p);
CachedPoint NegateCached(const CachedPoint& p);
ExtendedPoint PointAdd(const ExtendedPoint& p, const CachedPoint& q);
ExtendedPoint PointAdd(const ExtendedPoint& p, const ExtendedPoint& q);
ExtendedPoint PointSub(const ExtendedPoint& p, const ExtendedPoint& q);
ExtendedPoint PointDouble(const ExtendedPoint& p);
ExtendedPoint PointNegate(const ExtendedPoint& p);

// Ristretto255 equality, encoding and decoding.
bool RistrettoEqual(const ExtendedPoint& p, const ExtendedPoint& q);
std::array<uint8_t, 32> RistrettoEncode(const ExtendedPoint& p);
bool RistrettoDecode(const uint8_t in[32], ExtendedPoint* out);

// Signed radix-16 digits of a canonical little-endian scalar; each digit in
// [-8, 8].
std::array<int8_t, 64> Radix16(const uint8_t scalar[32]);

ExtendedPoint ScalarMul(const ExtendedPoint& base, const uint8_t scalar[32]);

// Precomputed multiples (j+1) * 16^i * B for fixed-base multiplication.
class FixedBaseTable {
 public:
  explicit FixedBaseTable(const ExtendedPoint& base);
  ExtendedPoint Mul(const uint8_t scalar[32]) const;

 private:
  std::array<std::array<CachedPoint, 8>, 64> table_;
};

}  // namespace tiva::crypto::detail
