// Copyright 2026 The stegoledger Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "stegoledger/secp256k1.hpp"

#include <vector>

namespace stegoledger::secp256k1 {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Limbs = std::array<u64, 4>;

constexpr Limbs kP = {0xFFFFFFFEFFFFFC2FULL, 0xFFFFFFFFFFFFFFFFULL, 0xFFFFFFFFFFFFFFFFULL, 0xFFFFFFFFFFFFFFFFULL};
// 2^256 mod p
constexpr u64 kPFold = 0x1000003D1ULL;
constexpr Limbs kN = {0xBFD25E8CD0364141ULL, 0xBAAEDCE6AF48A03BULL, 0xFFFFFFFFFFFFFFFEULL, 0xFFFFFFFFFFFFFFFFULL};

bool geq(const Limbs& a, const Limbs& b) {
  for (int i = 3; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return true;
}

// a -= b, returns the borrow.
u64 sub_in_place(Limbs& a, const Limbs& b) {
  u64 borrow = 0;
  for (int i = 0; i < 4; ++i) {
    u128 d = static_cast<u128>(a[i]) - b[i] - borrow;
    a[i] = static_cast<u64>(d);
    borrow = static_cast<u64>(d >> 64) & 1;
  }
  return borrow;
}

// a += b, returns the carry.
u64 add_in_place(Limbs& a, const Limbs& b) {
  u64 carry = 0;
  for (int i = 0; i < 4; ++i) {
    u128 s = static_cast<u128>(a[i]) + b[i] + carry;
    a[i] = static_cast<u64>(s);
    carry = static_cast<u64>(s >> 64);
  }
  return carry;
}

Limbs limbs_from_be(ByteView be32) {
  Limbs out{};
  for (int i = 0; i < 32; ++i) out[3 - i / 8] = (out[3 - i / 8] << 8) | be32[static_cast<std::size_t>(i)];
  return out;
}

Hash256 limbs_to_be(const Limbs& l) {
  Hash256 out{};
  for (int i = 0; i < 32; ++i) out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(l[3 - i / 8] >> (8 * (7 - i % 8)));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// FieldElement

FieldElement FieldElement::from_u64(std::uint64_t v) {
  FieldElement f;
  f.limb_[0] = v;
  return f;
}

std::optional<FieldElement> FieldElement::from_bytes(ByteView be32) {
  FieldElement f;
  f.limb_ = limbs_from_be(be32);
  if (geq(f.limb_, kP)) return std::nullopt;
  return f;
}

Hash256 FieldElement::to_bytes() const { return limbs_to_be(limb_); }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  FieldElement r = a;
  u64 carry = add_in_place(r.limb_, b.limb_);
  if (carry || geq(r.limb_, kP)) sub_in_place(r.limb_, kP);
  return r;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  FieldElement r = a;
  if (sub_in_place(r.limb_, b.limb_)) add_in_place(r.limb_, kP);
  return r;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  u64 wide[8] = {};
  for (int i = 0; i < 4; ++i) {
    u64 carry = 0;
    for (int j = 0; j < 4; ++j) {
      u128 t = static_cast<u128>(a.limb_[i]) * b.limb_[j] + wide[i + j] + carry;
      wide[i + j] = static_cast<u64>(t);
      carry = static_cast<u64>(t >> 64);
    }
    wide[i + 4] = carry;
  }

  // Fold the high half: hi * 2^256 == hi * kPFold (mod p).
  FieldElement r;
  u64 carry = 0;
  for (int i = 0; i < 4; ++i) {
    u128 t = static_cast<u128>(wide[i + 4]) * kPFold + wide[i] + carry;
    r.limb_[i] = static_cast<u64>(t);
    carry = static_cast<u64>(t >> 64);
  }
  // carry < 2^34; fold once more.
  u128 t = static_cast<u128>(carry) * kPFold + r.limb_[0];
  r.limb_[0] = static_cast<u64>(t);
  u64 c = static_cast<u64>(t >> 64);
  for (int i = 1; i < 4 && c; ++i) {
    u128 s = static_cast<u128>(r.limb_[i]) + c;
    r.limb_[i] = static_cast<u64>(s);
    c = static_cast<u64>(s >> 64);
  }
  if (c) {
    // Wrapped past 2^256; the low limbs are tiny here so this cannot carry again.
    u128 s = static_cast<u128>(r.limb_[0]) + kPFold;
    r.limb_[0] = static_cast<u64>(s);
    r.limb_[1] += static_cast<u64>(s >> 64);
  }
  if (geq(r.limb_, kP)) sub_in_place(r.limb_, kP);
  return r;
}

FieldElement FieldElement::negate() const {
  if (is_zero()) return *this;
  FieldElement r;
  r.limb_ = kP;
  sub_in_place(r.limb_, limb_);
  return r;
}

FieldElement FieldElement::pow(const Limbs& exponent) const {
  // 4-bit fixed window.
  std::array<FieldElement, 16> table;
  table[0] = from_u64(1);
  for (int i = 1; i < 16; ++i) table[static_cast<std::size_t>(i)] = table[static_cast<std::size_t>(i - 1)] * *this;
  FieldElement acc = from_u64(1);
  for (int nibble = 63; nibble >= 0; --nibble) {
    acc = acc.square().square().square().square();
    unsigned digit = static_cast<unsigned>(exponent[static_cast<std::size_t>(nibble / 16)] >> (4 * (nibble % 16))) & 0xf;
    if (digit) acc = acc * table[digit];
  }
  return acc;
}

FieldElement FieldElement::inverse() const {
  Limbs e = kP;
  e[0] -= 2;
  return pow(e);
}

std::optional<FieldElement> FieldElement::sqrt() const {
  // (p + 1) / 4
  constexpr Limbs kExp = {0xFFFFFFFFBFFFFF0CULL, 0xFFFFFFFFFFFFFFFFULL, 0xFFFFFFFFFFFFFFFFULL, 0x3FFFFFFFFFFFFFFFULL};
  FieldElement r = pow(kExp);
  if (r.square() != *this) return std::nullopt;
  return r;
}

// ---------------------------------------------------------------------------
// Scalar

Scalar Scalar::from_u64(std::uint64_t v) {
  Scalar s;
  s.limb_[0] = v;
  return s;
}

Scalar Scalar::reduce(ByteView be32) {
  Scalar s;
  s.limb_ = limbs_from_be(be32);
  // Any 256-bit value is < 2n, one subtraction suffices.
  if (geq(s.limb_, kN)) sub_in_place(s.limb_, kN);
  return s;
}

std::optional<Scalar> Scalar::from_bytes(ByteView be32) {
  Scalar s;
  s.limb_ = limbs_from_be(be32);
  if (geq(s.limb_, kN)) return std::nullopt;
  return s;
}

Hash256 Scalar::to_bytes() const { return limbs_to_be(limb_); }

Scalar operator+(const Scalar& a, const Scalar& b) {
  Scalar r = a;
  u64 carry = add_in_place(r.limb_, b.limb_);
  if (carry || geq(r.limb_, kN)) sub_in_place(r.limb_, kN);
  return r;
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  Scalar r = a;
  if (sub_in_place(r.limb_, b.limb_)) add_in_place(r.limb_, kN);
  return r;
}

Scalar Scalar::negate() const { return Scalar{} - *this; }

// ---------------------------------------------------------------------------
// Points

namespace {

const FieldElement& curve_b() {
  static const FieldElement b = FieldElement::from_u64(7);
  return b;
}

}  // namespace

bool AffinePoint::on_curve() const { return y.square() == x.square() * x + curve_b(); }

std::array<std::uint8_t, 33> AffinePoint::serialize_compressed() const {
  std::array<std::uint8_t, 33> out{};
  out[0] = y.is_odd() ? 0x03 : 0x02;
  Hash256 xb = x.to_bytes();
  std::copy(xb.begin(), xb.end(), out.begin() + 1);
  return out;
}

std::optional<AffinePoint> AffinePoint::parse_compressed(ByteView data) {
  if (data.size() != 33 || (data[0] != 0x02 && data[0] != 0x03)) return std::nullopt;
  auto x = FieldElement::from_bytes(data.subspan(1));
  if (!x) return std::nullopt;
  auto y = (x->square() * *x + curve_b()).sqrt();
  if (!y) return std::nullopt;
  if (y->is_odd() != (data[0] == 0x03)) *y = y->negate();
  return AffinePoint{*x, *y};
}

JacobianPoint JacobianPoint::from_affine(const AffinePoint& p) {
  JacobianPoint j;
  j.x_ = p.x;
  j.y_ = p.y;
  j.z_ = FieldElement::from_u64(1);
  return j;
}

JacobianPoint JacobianPoint::doubled() const {
  if (is_infinity() || y_.is_zero()) return infinity();
  FieldElement a = x_.square();
  FieldElement b = y_.square();
  FieldElement c = b.square();
  FieldElement xb = x_ + b;
  FieldElement d = xb.square() - a - c;
  d = d + d;
  FieldElement e = a + a + a;
  FieldElement f = e.square();
  JacobianPoint r;
  r.x_ = f - (d + d);
  FieldElement c8 = c + c;
  c8 = c8 + c8;
  c8 = c8 + c8;
  r.y_ = e * (d - r.x_) - c8;
  FieldElement yz = y_ * z_;
  r.z_ = yz + yz;
  return r;
}

JacobianPoint JacobianPoint::add_affine(const AffinePoint& q) const {
  if (is_infinity()) return from_affine(q);
  FieldElement z1z1 = z_.square();
  FieldElement u2 = q.x * z1z1;
  FieldElement s2 = q.y * z_ * z1z1;
  FieldElement h = u2 - x_;
  FieldElement r = s2 - y_;
  if (h.is_zero()) {
    if (r.is_zero()) return doubled();
    return infinity();
  }
  FieldElement hh = h.square();
  FieldElement hhh = h * hh;
  FieldElement v = x_ * hh;
  JacobianPoint out;
  out.x_ = r.square() - hhh - (v + v);
  out.y_ = r * (v - out.x_) - y_ * hhh;
  out.z_ = z_ * h;
  return out;
}

std::optional<AffinePoint> JacobianPoint::to_affine() const {
  if (is_infinity()) return std::nullopt;
  FieldElement zi = z_.inverse();
  FieldElement zi2 = zi.square();
  return AffinePoint{x_ * zi2, y_ * zi2 * zi};
}

void batch_to_affine(std::span<const JacobianPoint> in, std::span<std::optional<AffinePoint>> out) {
  const std::size_t n = in.size();
  std::vector<FieldElement> prefix(n);
  FieldElement acc = FieldElement::from_u64(1);
  for (std::size_t i = 0; i < n; ++i) {
    prefix[i] = acc;
    if (!in[i].is_infinity()) acc = acc * in[i].z_;
  }
  FieldElement inv = acc.inverse();
  for (std::size_t i = n; i-- > 0;) {
    if (in[i].is_infinity()) {
      out[i] = std::nullopt;
      continue;
    }
    FieldElement zi = inv * prefix[i];
    inv = inv * in[i].z_;
    FieldElement zi2 = zi.square();
    out[i] = AffinePoint{in[i].x_ * zi2, in[i].y_ * zi2 * zi};
  }
}

const AffinePoint& generator() {
  static const AffinePoint g = [] {
    auto x = FieldElement::from_bytes(from_hex("79be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798"));
    auto y = FieldElement::from_bytes(from_hex("483ada7726a3c4655da4fbfc0e1108a8fd17b448a68554199c47d08ffb10d4b8"));
    return AffinePoint{*x, *y};
  }();
  return g;
}

namespace {

constexpr int kWindows = 32;
constexpr int kEntries = 255;

// table[w * 255 + (d - 1)] = d * 256^w * G
const std::vector<AffinePoint>& comb_table() {
  static const std::vector<AffinePoint> table = [] {
    std::vector<AffinePoint> t(kWindows * kEntries);
    std::vector<JacobianPoint> row(kEntries);
    std::vector<std::optional<AffinePoint>> affine(kEntries);
    AffinePoint base = generator();
    for (int w = 0; w < kWindows; ++w) {
      JacobianPoint acc = JacobianPoint::from_affine(base);
      row[0] = acc;
      for (int d = 1; d < kEntries; ++d) {
        acc = acc.add_affine(base);
        row[static_cast<std::size_t>(d)] = acc;
      }
      batch_to_affine(row, affine);
      for (int d = 0; d < kEntries; ++d) t[static_cast<std::size_t>(w * kEntries + d)] = *affine[static_cast<std::size_t>(d)];
      // 256 * base = 255 * base + base
      base = *acc.add_affine(base).to_affine();
    }
    return t;
  }();
  return table;
}

}  // namespace

JacobianPoint mul_generator(const Scalar& k) {
  const auto& table = comb_table();
  JacobianPoint acc;
  for (int w = 0; w < kWindows; ++w) {
    unsigned digit = k.byte(w);
    if (digit) acc = acc.add_affine(table[static_cast<std::size_t>(w * kEntries) + digit - 1]);
  }
  return acc;
}

std::optional<AffinePoint> mul_generator_add(const Scalar& k, const AffinePoint& offset) {
  return mul_generator(k).add_affine(offset).to_affine();
}

}  // namespace stegoledger::secp256k1
