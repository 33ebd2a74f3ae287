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
#ifndef STEGOLEDGER_SECP256K1_HPP_
#define STEGOLEDGER_SECP256K1_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>

#include "stegoledger/bytes.hpp"

// Minimal secp256k1 arithmetic tuned for one job: computing h*G + Q for many
// independent scalars h. Not constant time; never feed it long-term secrets
// in a setting where timing is observable.
namespace stegoledger::secp256k1 {

// Element of GF(p), p = 2^256 - 2^32 - 977. Four little-endian 64-bit limbs,
// always fully reduced.
class FieldElement {
 public:
  constexpr FieldElement() = default;
  static FieldElement from_u64(std::uint64_t v);
  // Returns nullopt when the value is >= p.
  static std::optional<FieldElement> from_bytes(ByteView be32);
  Hash256 to_bytes() const;

  bool is_zero() const { return (limb_[0] | limb_[1] | limb_[2] | limb_[3]) == 0; }
  bool is_odd() const { return limb_[0] & 1; }
  friend bool operator==(const FieldElement&, const FieldElement&) = default;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  FieldElement square() const { return *this * *this; }
  FieldElement negate() const;
  FieldElement inverse() const;
  // Square root when one exists (p = 3 mod 4).
  std::optional<FieldElement> sqrt() const;

 private:
  FieldElement pow(const std::array<std::uint64_t, 4>& exponent) const;
  std::array<std::uint64_t, 4> limb_{};
};

// Integer modulo the group order n.
class Scalar {
 public:
  constexpr Scalar() = default;
  static Scalar from_u64(std::uint64_t v);
  // Interprets 32 big-endian bytes as an integer and reduces it mod n.
  static Scalar reduce(ByteView be32);
  // Strict parse: nullopt when the value is >= n.
  static std::optional<Scalar> from_bytes(ByteView be32);
  Hash256 to_bytes() const;

  bool is_zero() const { return (limb_[0] | limb_[1] | limb_[2] | limb_[3]) == 0; }
  friend bool operator==(const Scalar&, const Scalar&) = default;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  Scalar negate() const;

  // Byte i of the little-endian representation (i = 0 is least significant).
  std::uint8_t byte(int i) const { return static_cast<std::uint8_t>(limb_[i / 8] >> (8 * (i % 8))); }

 private:
  std::array<std::uint64_t, 4> limb_{};
};

struct AffinePoint {
  FieldElement x;
  FieldElement y;

  friend bool operator==(const AffinePoint&, const AffinePoint&) = default;
  bool on_curve() const;
  std::array<std::uint8_t, 33> serialize_compressed() const;
  // nullopt for bad prefix, x >= p or x not on the curve.
  static std::optional<AffinePoint> parse_compressed(ByteView data);
  AffinePoint negate() const { return {x, y.negate()}; }
};

// Jacobian coordinates (X/Z^2, Y/Z^3). Z == 0 encodes the point at infinity.
class JacobianPoint {
 public:
  JacobianPoint() = default;
  static JacobianPoint infinity() { return {}; }
  static JacobianPoint from_affine(const AffinePoint& p);

  bool is_infinity() const { return z_.is_zero(); }
  JacobianPoint doubled() const;
  JacobianPoint add_affine(const AffinePoint& q) const;
  std::optional<AffinePoint> to_affine() const;

  const FieldElement& z() const { return z_; }

 private:
  friend void batch_to_affine(std::span<const JacobianPoint>, std::span<std::optional<AffinePoint>>);
  FieldElement x_, y_, z_;
};

const AffinePoint& generator();

// scalar * G through an 8-bit fixed-base comb (32 windows x 255 entries).
JacobianPoint mul_generator(const Scalar& k);

// scalar * G + offset; nullopt at the point at infinity.
std::optional<AffinePoint> mul_generator_add(const Scalar& k, const AffinePoint& offset);

// Converts many points with one field inversion. out.size() must equal in.size().
void batch_to_affine(std::span<const JacobianPoint> in, std::span<std::optional<AffinePoint>> out);

}  // namespace stegoledger::secp256k1

#endif  // STEGOLEDGER_SECP256K1_HPP_
