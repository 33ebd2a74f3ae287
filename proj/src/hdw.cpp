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
#include "stegoledger/hdw.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "stegoledger/base58.hpp"
#include "stegoledger/errors.hpp"
#include "stegoledger/hash.hpp"

namespace stegoledger::hdw {

using secp256k1::AffinePoint;
using secp256k1::Scalar;

Domain signal_domain(Channel channel) {
  return channel == Channel::kHigh ? Domain::kSignalHigh : Domain::kSignalMed;
}

const char* to_string(Domain domain) {
  switch (domain) {
    case Domain::kSignalHigh: return "SIG_HIGH";
    case Domain::kSignalMed: return "SIG_MED";
    case Domain::kGrind: return "GRIND";
  }
  return "?";
}

const char* to_string(Channel channel) { return channel == Channel::kHigh ? "high" : "med"; }

std::string Address::text() const {
  Bytes payload;
  payload.reserve(21);
  payload.push_back(version);
  payload.insert(payload.end(), digest.begin(), digest.end());
  return base58::encode_check(payload);
}

Address Address::parse(std::string_view text) {
  Bytes payload = base58::decode_check(text);
  if (payload.size() != 21) throw Error(ErrorCode::kValidation, "address payload must be 21 bytes");
  Address a;
  a.version = payload[0];
  std::copy(payload.begin() + 1, payload.end(), a.digest.begin());
  return a;
}

KeyMaterial KeyMaterial::from_private(const Hash256& k, const Scalar& y) {
  if (y.is_zero()) throw Error(ErrorCode::kValidation, "y must be nonzero");
  KeyMaterial km;
  km.k_ = k;
  km.y_ = y;
  km.gy_ = *secp256k1::mul_generator(y).to_affine();
  return km;
}

KeyMaterial KeyMaterial::from_public(const Hash256& k, const AffinePoint& gy) {
  if (!gy.on_curve()) throw Error(ErrorCode::kValidation, "gy is not on secp256k1");
  KeyMaterial km;
  km.k_ = k;
  km.gy_ = gy;
  return km;
}

KeyMaterial KeyMaterial::generate(Drbg& rng) {
  Hash256 k;
  rng.fill(k);
  for (;;) {
    Hash256 raw;
    rng.fill(raw);
    auto y = Scalar::from_bytes(raw);
    if (y && !y->is_zero()) return from_private(k, *y);
  }
}

Scalar index_scalar(const Hash256& k, DerivationIndex idx) {
  std::array<std::uint8_t, 41> buf{};
  std::copy(k.begin(), k.end(), buf.begin());
  buf[32] = static_cast<std::uint8_t>(idx.domain);
  for (int i = 0; i < 8; ++i) buf[33 + static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(idx.counter >> (56 - 8 * i));
  return Scalar::reduce(crypto::sha256(buf));
}

namespace {

void check_counter(DerivationIndex idx) {
  if (idx.counter == 0) throw Error(ErrorCode::kValidation, "derivation counter starts at 1");
}

}  // namespace

Scalar derive_private(const KeyMaterial& km, DerivationIndex idx) {
  check_counter(idx);
  if (!km.has_private()) throw Error(ErrorCode::kValidation, "key material has no private part");
  Scalar x = *km.y() + index_scalar(km.k(), idx);
  if (x.is_zero()) throw Error(ErrorCode::kDegenerateIndex, "derived private key is zero");
  return x;
}

std::optional<AffinePoint> try_derive_public(const KeyMaterial& km, DerivationIndex idx) {
  check_counter(idx);
  return secp256k1::mul_generator_add(index_scalar(km.k(), idx), km.gy());
}

AffinePoint derive_public(const KeyMaterial& km, DerivationIndex idx) {
  auto p = try_derive_public(km, idx);
  if (!p) throw Error(ErrorCode::kDegenerateIndex, "derived public key is the point at infinity");
  return *p;
}

Address to_address(const AffinePoint& pub, std::uint8_t version) {
  auto ser = pub.serialize_compressed();
  return Address{crypto::hash160(ser), version};
}

Address derive_address(const KeyMaterial& km, DerivationIndex idx, std::uint8_t version) {
  return to_address(derive_public(km, idx), version);
}

Address signal_address(const KeyMaterial& km, Channel channel, std::uint64_t counter) {
  return derive_address(km, {signal_domain(channel), counter});
}

std::string format_key_file(const KeyMaterial& km, bool include_private) {
  if (include_private && !km.has_private()) throw Error(ErrorCode::kValidation, "no private part to write");
  std::ostringstream out;
  out << "k=" << to_hex(km.k()) << "\n";
  if (include_private) out << "y=" << to_hex(km.y()->to_bytes()) << "\n";
  out << "gy=" << to_hex(km.gy().serialize_compressed()) << "\n";
  return out.str();
}

KeyMaterial parse_key_file(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> fields;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::kValidation, "key file line without '='");
    fields.emplace_back(line.substr(0, eq), line.substr(eq + 1));
  }
  const bool with_y = fields.size() == 3;
  if ((fields.size() != 2 && !with_y) || fields[0].first != "k" || (with_y && fields[1].first != "y") ||
      fields.back().first != "gy") {
    throw Error(ErrorCode::kValidation, "key file must hold k, optional y, gy in that order");
  }
  Hash256 k = array_from_hex<32>(fields[0].second);
  auto gy = AffinePoint::parse_compressed(array_from_hex<33>(fields.back().second));
  if (!gy) throw Error(ErrorCode::kValidation, "gy is not a valid compressed point");
  if (!with_y) return KeyMaterial::from_public(k, *gy);
  auto y = Scalar::from_bytes(array_from_hex<32>(fields[1].second));
  if (!y) throw Error(ErrorCode::kValidation, "y is not below the group order");
  KeyMaterial km = KeyMaterial::from_private(k, *y);
  if (!(km.gy() == *gy)) throw Error(ErrorCode::kValidation, "gy does not match y");
  return km;
}

void write_key_file(const std::filesystem::path& path, const KeyMaterial& km, bool include_private) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << format_key_file(km, include_private);
}

KeyMaterial read_key_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_key_file(buf.str());
}

}  // namespace stegoledger::hdw
