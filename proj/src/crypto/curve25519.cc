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

#include "tiva/crypto/detail/curve25519.h"

#include <cstring>

namespace tiva::crypto::detail {

namespace {

using u128 = unsigned __int128;

constexpr uint64_t kMask51 = (uint64_t{1} << 51) - 1;

Fe FeFromHexLe(const char* hex) {
  uint8_t raw[32];
  for (int i = 0; i < 32; ++i) {
    auto nib = [](char c) -> uint8_t {
      return static_cast<uint8_t>(c <= '9' ? c - '0' : c - 'a' + 10);
    };
    raw[i] = static_cast<uint8_t>((nib(hex[2 * i]) << 4) | nib(hex[2 * i + 1]));
  }
  return FeFromBytes(raw);
}

const Fe& ConstD() {
  static const Fe v = FeFromHexLe(
      "a3785913ca4deb75abd841414d0a700098e879777940c78c73fe6f2bee6c0352");
  return v;
}

const Fe& ConstD2() {
  static const Fe v = FeFromHexLe(
      "59f1b226949bd6eb56b183829a14e00030d1f3eef2808e19e7fcdf56dcd90624");
  return v;
}

const Fe& ConstSqrtM1() {
  static const Fe v = FeFromHexLe(
      "b0a00e4a271beec478e42fad0618432fa7d7fb3d99004d2b0bdfc14f8024832b");
  return v;
}

const Fe& ConstInvSqrtAMinusD() {
  static const Fe v = FeFromHexLe(
      "ea405d80aafdc899be72415a17162f9d40d801fe917bc216a2fcafcf05896c78");
  return v;
}

void WeakReduce(Fe& t) {
  uint64_t c;
  c = t.v[0] >> 51; t.v[0] &= kMask51; t.v[1] += c;
  c = t.v[1] >> 51; t.v[1] &= kMask51; t.v[2] += c;
  c = t.v[2] >> 51; t.v[2] &= kMask51; t.v[3] += c;
  c = t.v[3] >> 51; t.v[3] &= kMask51; t.v[4] += c;
  c = t.v[4] >> 51; t.v[4] &= kMask51; t.v[0] += 19 * c;
  c = t.v[0] >> 51; t.v[0] &= kMask51; t.v[1] += c;
}

Fe Pow2k(Fe a, int k) {
  for (int i = 0; i < k; ++i) a = FeSq(a);
  return a;
}

uint64_t Load64(const uint8_t* p) {
  uint64_t r = 0;
  for (int i = 7; i >= 0; --i) r = (r << 8) | p[i];
  return r;
}

void Store64(uint8_t* p, uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    p[i] = static_cast<uint8_t>(v);
    v >>= 8;
  }
}

}  // namespace

Fe FeZero() { return Fe{{0, 0, 0, 0, 0}}; }
Fe FeOne() { return Fe{{1, 0, 0, 0, 0}}; }

Fe FeFromBytes(const uint8_t in[32]) {
  const uint64_t w0 = Load64(in);
  const uint64_t w1 = Load64(in + 8);
  const uint64_t w2 = Load64(in + 16);
  const uint64_t w3 = Load64(in + 24);
  Fe r;
  r.v[0] = w0 & kMask51;
  r.v[1] = ((w0 >> 51) | (w1 << 13)) & kMask51;
  r.v[2] = ((w1 >> 38) | (w2 << 26)) & kMask51;
  r.v[3] = ((w2 >> 25) | (w3 << 39)) & kMask51;
  r.v[4] = (w3 >> 12) & kMask51;
  return r;
}

void FeToBytes(uint8_t out[32], const Fe& a) {
  Fe t = a;
  WeakReduce(t);
  WeakReduce(t);
  // t < 2p here; subtract p once if t >= p.
  uint64_t q = (t.v[0] + 19) >> 51;
  q = (t.v[1] + q) >> 51;
  q = (t.v[2] + q) >> 51;
  q = (t.v[3] + q) >> 51;
  q = (t.v[4] + q) >> 51;
  t.v[0] += 19 * q;
  uint64_t c;
  c = t.v[0] >> 51; t.v[0] &= kMask51; t.v[1] += c;
  c = t.v[1] >> 51; t.v[1] &= kMask51; t.v[2] += c;
  c = t.v[2] >> 51; t.v[2] &= kMask51; t.v[3] += c;
  c = t.v[3] >> 51; t.v[3] &= kMask51; t.v[4] += c;
  t.v[4] &= kMask51;
  Store64(out, t.v[0] | (t.v[1] << 51));
  Store64(out + 8, (t.v[1] >> 13) | (t.v[2] << 38));
  Store64(out + 16, (t.v[2] >> 26) | (t.v[3] << 25));
  Store64(out + 24, (t.v[3] >> 39) | (t.v[4] << 12));
}

Fe FeAdd(const Fe& a, const Fe& b) {
  Fe r;
  for (int i = 0; i < 5; ++i) r.v[i] = a.v[i] + b.v[i];
  WeakReduce(r);
  return r;
}

Fe FeSub(const Fe& a, const Fe& b) {
  // a + 2p - b, with 2p = (2^52 - 38, 2^52 - 2, ...).
  Fe r;
  r.v[0] = a.v[0] + 0xFFFFFFFFFFFDAULL - b.v[0];
  for (int i = 1; i < 5; ++i) r.v[i] = a.v[i] + 0xFFFFFFFFFFFFEULL - b.v[i];
  WeakReduce(r);
  return r;
}

Fe FeNeg(const Fe& a) { return FeSub(FeZero(), a); }

Fe FeMul(const Fe& a, const Fe& b) {
  const uint64_t a0 = a.v[0], a1 = a.v[1], a2 = a.v[2], a3 = a.v[3],
                 a4 = a.v[4];
  const uint64_t b0 = b.v[0], b1 = b.v[1], b2 = b.v[2], b3 = b.v[3],
                 b4 = b.v[4];
  const uint64_t b1_19 = 19 * b1, b2_19 = 19 * b2, b3_19 = 19 * b3,
                 b4_19 = 19 * b4;

  u128 r0 = (u128)a0 * b0 + (u128)a1 * b4_19 + (u128)a2 * b3_19 +
            (u128)a3 * b2_19 + (u128)a4 * b1_19;
  u128 r1 = (u128)a0 * b1 + (u128)a1 * b0 + (u128)a2 * b4_19 +
            (u128)a3 * b3_19 + (u128)a4 * b2_19;
  u128 r2 = (u128)a0 * b2 + (u128)a1 * b1 + (u128)a2 * b0 +
            (u128)a3 * b4_19 + (u128)a4 * b3_19;
  u128 r3 = (u128)a0 * b3 + (u128)a1 * b2 + (u128)a2 * b1 + (u128)a3 * b0 +
            (u128)a4 * b4_19;
  u128 r4 = (u128)a0 * b4 + (u128)a1 * b3 + (u128)a2 * b2 + (u128)a3 * b1 +
            (u128)a4 * b0;

  Fe r;
  r1 += static_cast<uint64_t>(r0 >> 51);
  r.v[0] = static_cast<uint64_t>(r0) & kMask51;
  r2 += static_cast<uint64_t>(r1 >> 51);
  r.v[1] = static_cast<uint64_t>(r1) & kMask51;
  r3 += static_cast<uint64_t>(r2 >> 51);
  r.v[2] = static_cast<uint64_t>(r2) & kMask51;
  r4 += static_cast<uint64_t>(r3 >> 51);
  r.v[3] = static_cast<uint64_t>(r3) & kMask51;
  const u128 top = (r4 >> 51) * 19 + r.v[0];
  r.v[4] = static_cast<uint64_t>(r4) & kMask51;
  r.v[0] = static_cast<uint64_t>(top) & kMask51;
  r.v[1] += static_cast<uint64_t>(top >> 51);
  return r;
}

Fe FeSq(const Fe& a) { return FeMul(a, a); }

Fe FePow22523(const Fe& z) {
  Fe z2 = FeSq(z);
  Fe z9 = FeMul(z, Pow2k(z2, 2));
  Fe z11 = FeMul(z2, z9);
  Fe t0 = FeMul(z9, FeSq(z11));          // 2^5 - 1
  Fe t1 = FeMul(Pow2k(t0, 5), t0);       // 2^10 - 1
  Fe t2 = FeMul(Pow2k(t1, 10), t1);      // 2^20 - 1
  Fe t3 = FeMul(Pow2k(t2, 20), t2);      // 2^40 - 1
  Fe t4 = FeMul(Pow2k(t3, 10), t1);      // 2^50 - 1
  Fe t5 = FeMul(Pow2k(t4, 50), t4);      // 2^100 - 1
  Fe t6 = FeMul(Pow2k(t5, 100), t5);     // 2^200 - 1
  Fe t7 = FeMul(Pow2k(t6, 50), t4);      // 2^250 - 1
  return FeMul(Pow2k(t7, 2), z);         // 2^252 - 3
}

Fe FeInvert(const Fe& z) {
  Fe z2 = FeSq(z);
  Fe z9 = FeMul(z, Pow2k(z2, 2));
  Fe z11 = FeMul(z2, z9);
  Fe t0 = FeMul(z9, FeSq(z11));
  Fe t1 = FeMul(Pow2k(t0, 5), t0);
  Fe t2 = FeMul(Pow2k(t1, 10), t1);
  Fe t3 = FeMul(Pow2k(t2, 20), t2);
  Fe t4 = FeMul(Pow2k(t3, 10), t1);
  Fe t5 = FeMul(Pow2k(t4, 50), t4);
  Fe t6 = FeMul(Pow2k(t5, 100), t5);
  Fe t7 = FeMul(Pow2k(t6, 50), t4);
  return FeMul(Pow2k(t7, 5), z11);       // 2^255 - 21
}

bool FeIsNegative(const Fe& a) {
  uint8_t s[32];
  FeToBytes(s, a);
  return (s[0] & 1) != 0;
}

bool FeIsZero(const Fe& a) {
  uint8_t s[32];
  FeToBytes(s, a);
  uint8_t acc = 0;
  for (uint8_t b : s) acc |= b;
  return acc == 0;
}

bool FeEqual(const Fe& a, const Fe& b) {
  uint8_t sa[32], sb[32];
  FeToBytes(sa, a);
  FeToBytes(sb, b);
  return std::memcmp(sa, sb, 32) == 0;
}

Fe FeAbs(const Fe& a) { return FeIsNegative(a) ? FeNeg(a) : a; }

SqrtRatio SqrtRatioM1(const Fe& u, const Fe& v) {
  const Fe v3 = FeMul(FeSq(v), v);
  const Fe v7 = FeMul(FeSq(v3), v);
  Fe r = FeMul(FeMul(u, v3), FePow22523(FeMul(u, v7)));
  const Fe check = FeMul(v, FeSq(r));
  const Fe neg_u = FeNeg(u);
  const bool correct = FeEqual(check, u);
  const bool flipped = FeEqual(check, neg_u);
  const bool flipped_i = FeEqual(check, FeMul(neg_u, ConstSqrtM1()));
  if (flipped || flipped_i) r = FeMul(r, ConstSqrtM1());
  return {correct || flipped, FeAbs(r)};
}

ExtendedPoint PointIdentity() {
  return {FeZero(), FeOne(), FeOne(), FeZero()};
}

CachedPoint ToCached(const ExtendedPoint& p) {
  return {FeAdd(p.y, p.x), FeSub(p.y, p.x), p.z, FeMul(p.t, ConstD2())};
}

CachedPoint NegateCached(const CachedPoint& p) {
  return {p.y_minus_x, p.y_plus_x, p.z, FeNeg(p.t2d)};
}

ExtendedPoint PointAdd(const ExtendedPoint& p, const CachedPoint& q) {
  const Fe a = FeMul(FeSub(p.y, p.x), q.y_minus_x);
  const Fe b = FeMul(FeAdd(p.y, p.x), q.y_plus_x);
  const Fe c = FeMul(p.t, q.t2d);
  const Fe zz = FeMul(p.z, q.z);
  const Fe d = FeAdd(zz, zz);
  const Fe e = FeSub(b, a);
  const Fe f = FeSub(d, c);
  const Fe g = FeAdd(d, c);
  const Fe h = FeAdd(b, a);
  return {FeMul(e, f), FeMul(g, h), FeMul(f, g), FeMul(e, h)};
}

ExtendedPoint PointAdd(const ExtendedPoint& p, const ExtendedPoint& q) {
  return PointAdd(p, ToCached(q));
}

ExtendedPoint PointSub(const ExtendedPoint& p, const ExtendedPoint& q) {
  return PointAdd(p, NegateCached(ToCached(q)));
}

ExtendedPoint PointDouble(const ExtendedPoint& p) {
  // dbl-2008-hwcd with a = -1.
  const Fe a = FeSq(p.x);
  const Fe b = FeSq(p.y);
  const Fe zz = FeSq(p.z);
  const Fe c = FeAdd(zz, zz);
  const Fe d = FeNeg(a);
  const Fe e = FeSub(FeSub(FeSq(FeAdd(p.x, p.y)), a), b);
  const Fe g = FeAdd(d, b);
  const Fe f = FeSub(g, c);
  const Fe h = FeSub(d, b);
  return {FeMul(e, f), FeMul(g, h), FeMul(f, g), FeMul(e, h)};
}

ExtendedPoint PointNegate(const ExtendedPoint& p) {
  return {FeNeg(p.x), p.y, p.z, FeNeg(p.t)};
}

bool RistrettoEqual(const ExtendedPoint& p, const ExtendedPoint& q) {
  return FeEqual(FeMul(p.x, q.y), FeMul(p.y, q.x)) ||
         FeEqual(FeMul(p.y, q.y), FeMul(p.x, q.x));
}

std::array<uint8_t, 32> RistrettoEncode(const ExtendedPoint& p) {
  const Fe u1 = FeMul(FeAdd(p.z, p.y), FeSub(p.z, p.y));
  const Fe u2 = FeMul(p.x, p.y);
  const Fe inv = SqrtRatioM1(FeOne(), FeMul(u1, FeSq(u2))).root;
  const Fe den1 = FeMul(inv, u1);
  const Fe den2 = FeMul(inv, u2);
  const Fe z_inv = FeMul(FeMul(den1, den2), p.t);
  const bool rotate = FeIsNegative(FeMul(p.t, z_inv));
  Fe x = p.x;
  Fe y = p.y;
  Fe den_inv = den2;
  if (rotate) {
    x = FeMul(p.y, ConstSqrtM1());
    y = FeMul(p.x, ConstSqrtM1());
    den_inv = FeMul(den1, ConstInvSqrtAMinusD());
  }
  if (FeIsNegative(FeMul(x, z_inv))) y = FeNeg(y);
  const Fe s = FeAbs(FeMul(den_inv, FeSub(p.z, y)));
  std::array<uint8_t, 32> out{};
  FeToBytes(out.data(), s);
  return out;
}

bool RistrettoDecode(const uint8_t in[32], ExtendedPoint* out) {
  const Fe s = FeFromBytes(in);
  uint8_t check[32];
  FeToBytes(check, s);
  if (std::memcmp(check, in, 32) != 0) return false;  // non-canonical
  if (check[0] & 1) return false;                     // negative s

  const Fe ss = FeSq(s);
  const Fe u1 = FeSub(FeOne(), ss);
  const Fe u2 = FeAdd(FeOne(), ss);
  const Fe u2_sq = FeSq(u2);
  const Fe v = FeSub(FeNeg(FeMul(ConstD(), FeSq(u1))), u2_sq);
  const SqrtRatio inv = SqrtRatioM1(FeOne(), FeMul(v, u2_sq));
  const Fe den_x = FeMul(inv.root, u2);
  const Fe den_y = FeMul(FeMul(inv.root, den_x), v);
  const Fe x = FeAbs(FeMul(FeAdd(s, s), den_x));
  const Fe y = FeMul(u1, den_y);
  const Fe t = FeMul(x, y);
  if (!inv.was_square || FeIsNegative(t) || FeIsZero(y)) return false;
  *out = {x, y, FeOne(), t};
  return true;
}

std::array<int8_t, 64> Radix16(const uint8_t scalar[32]) {
  std::array<int8_t, 64> e{};
  for (int i = 0; i < 32; ++i) {
    e[2 * i] = static_cast<int8_t>(scalar[i] & 15);
    e[2 * i + 1] = static_cast<int8_t>(scalar[i] >> 4);
  }
  int8_t carry = 0;
  for (int i = 0; i < 63; ++i) {
    e[i] = static_cast<int8_t>(e[i] + carry);
    carry = static_cast<int8_t>((e[i] + 8) >> 4);
    e[i] = static_cast<int8_t>(e[i] - (carry << 4));
  }
  e[63] = static_cast<int8_t>(e[63] + carry);
  return e;
}

ExtendedPoint ScalarMul(const ExtendedPoint& base, const uint8_t scalar[32]) {
  const std::array<int8_t, 64> digits = Radix16(scalar);
  int top = 63;
  while (top >= 0 && digits[top] == 0) --top;
  if (top < 0) return PointIdentity();

  std::array<CachedPoint, 8> table;
  const CachedPoint base_cached = ToCached(base);
  ExtendedPoint multiple = base;
  table[0] = base_cached;
  for (int j = 1; j < 8; ++j) {
    multiple = PointAdd(multiple, base_cached);
    table[j] = ToCached(multiple);
  }

  ExtendedPoint acc = PointIdentity();
  for (int i = top; i >= 0; --i) {
    if (i != top) {
      acc = PointDouble(PointDouble(PointDouble(PointDouble(acc))));
    }
    const int d = digits[i];
    if (d > 0) {
      acc = PointAdd(acc, table[d - 1]);
    } else if (d < 0) {
      acc = PointAdd(acc, NegateCached(table[-d - 1]));
    }
  }
  return acc;
}

FixedBaseTable::FixedBaseTable(const ExtendedPoint& base) {
  ExtendedPoint row_base = base;
  for (int i = 0; i < 64; ++i) {
    const CachedPoint row_cached = ToCached(row_base);
    ExtendedPoint m = row_base;
    table_[i][0] = row_cached;
    for (int j = 1; j < 8; ++j) {
      m = PointAdd(m, row_cached);
      table_[i][j] = ToCached(m);
    }
    row_base = PointDouble(PointDouble(PointDouble(PointDouble(row_base))));
  }
}

ExtendedPoint FixedBaseTable::Mul(const uint8_t scalar[32]) const {
  const std::array<int8_t, 64> digits = Radix16(scalar);
  ExtendedPoint acc = PointIdentity();
  for (int i = 0; i < 64; ++i) {
    const int d = digits[i];
    if (d > 0) {
      acc = PointAdd(acc, table_[i][d - 1]);
    } else if (d < 0) {
      acc = PointAdd(acc, NegateCached(table_[i][-d - 1]));
    }
  }
  return acc;
}

}  // namespace tiva::crypto::detail
