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
#ifndef STEGOLEDGER_HDW_HPP_
#define STEGOLEDGER_HDW_HPP_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "stegoledger/bytes.hpp"
#include "stegoledger/random.hpp"
#include "stegoledger/secp256k1.hpp"

// Hierarchical deterministic key derivation.
//
//   x_i   = y + H(k || tag || i)            (mod n)
//   x_i*G = H(k || tag || i)*G + y*G
//
// H is SHA-256 read as a big-endian integer and reduced mod n, `tag` is a
// one-byte domain separator and `i` an 8-byte big-endian counter. Holders of
// (k, y) and holders of (k, y*G) derive the same public keys and addresses.
namespace stegoledger::hdw {

enum class Domain : std::uint8_t {
  kSignalHigh = 0x01,
  kSignalMed = 0x02,
  kGrind = 0x03,
};

enum class Channel : std::uint8_t { kHigh, kMed };

Domain signal_domain(Channel channel);
const char* to_string(Domain domain);
const char* to_string(Channel channel);

struct DerivationIndex {
  Domain domain = Domain::kGrind;
  std::uint64_t counter = 1;  // >= 1
};

inline constexpr std::uint8_t kP2pkhVersion = 0x00;
inline constexpr std::uint8_t kP2shVersion = 0x05;

struct Address {
  Hash160 digest{};
  std::uint8_t version = kP2pkhVersion;

  // base58check(version || digest)
  std::string text() const;
  // Throws Error(kValidation) on a bad checksum or wrong payload size.
  static Address parse(std::string_view text);

  friend auto operator<=>(const Address&, const Address&) = default;
};

class KeyMaterial {
 public:
  // Throws Error(kValidation) if y is zero.
  static KeyMaterial from_private(const Hash256& k, const secp256k1::Scalar& y);
  // Throws Error(kValidation) if gy is not on the curve.
  static KeyMaterial from_public(const Hash256& k, const secp256k1::AffinePoint& gy);
  static KeyMaterial generate(Drbg& rng);

  const Hash256& k() const { return k_; }
  const std::optional<secp256k1::Scalar>& y() const { return y_; }
  const secp256k1::AffinePoint& gy() const { return gy_; }
  bool has_private() const { return y_.has_value(); }
  KeyMaterial public_part() const { return from_public(k_, gy_); }

  friend bool operator==(const KeyMaterial&, const KeyMaterial&) = default;

 private:
  KeyMaterial() = default;
  Hash256 k_{};
  std::optional<secp256k1::Scalar> y_;
  secp256k1::AffinePoint gy_;
};

// H(k || tag || counter) mod n.
secp256k1::Scalar index_scalar(const Hash256& k, DerivationIndex idx);

// Throws Error(kValidation) without y or with counter 0, Error(kDegenerateIndex)
// when the result is zero; callers skip to the next counter.
secp256k1::Scalar derive_private(const KeyMaterial& km, DerivationIndex idx);
// Same error contract; kDegenerateIndex at the point at infinity.
secp256k1::AffinePoint derive_public(const KeyMaterial& km, DerivationIndex idx);
// nullopt instead of kDegenerateIndex.
std::optional<secp256k1::AffinePoint> try_derive_public(const KeyMaterial& km, DerivationIndex idx);

Address to_address(const secp256k1::AffinePoint& pub, std::uint8_t version = kP2pkhVersion);
Address derive_address(const KeyMaterial& km, DerivationIndex idx, std::uint8_t version = kP2pkhVersion);

// Address announcing a stego transaction at the given signal counter.
Address signal_address(const KeyMaterial& km, Channel channel, std::uint64_t counter);

// Key file: text lines in fixed order
//   k=<64 hex>
//   y=<64 hex>      (private file only)
//   gy=<66 hex>     (compressed point)
// Lines starting with '#' are ignored.
std::string format_key_file(const KeyMaterial& km, bool include_private);
KeyMaterial parse_key_file(std::string_view text);
void write_key_file(const std::filesystem::path& path, const KeyMaterial& km, bool include_private);
KeyMaterial read_key_file(const std::filesystem::path& path);

}  // namespace stegoledger::hdw

#endif  // STEGOLEDGER_HDW_HPP_
