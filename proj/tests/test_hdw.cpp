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
#include <random>
#include <set>

#include <doctest.h>
#include "oracle_vectors.hpp"
#include "stegoledger/ecdsa.hpp"
#include "stegoledger/errors.hpp"
#include "stegoledger/hash.hpp"
#include "stegoledger/hdw.hpp"
#include "stegoledger/stats.hpp"

using namespace stegoledger;
using namespace stegoledger::hdw;
using secp256k1::Scalar;

namespace {

KeyMaterial oracle_key(const testing::OracleVector& v) {
  return KeyMaterial::from_private(array_from_hex<32>(v.k_hex), *Scalar::from_bytes(array_from_hex<32>(v.y_hex)));
}

KeyMaterial test_key(std::uint64_t seed) {
  Drbg rng = Drbg::from_label("test-key", seed);
  return KeyMaterial::generate(rng);
}

}  // namespace

TEST_CASE("oracle vectors: private scalar, public key and address") {
  for (const auto& v : testing::kOracleVectors) {
    CAPTURE(v.address);
    KeyMaterial km = oracle_key(v);
    DerivationIndex idx{v.domain, v.counter};
    CHECK(to_hex(derive_private(km, idx).to_bytes()) == v.x_hex);
    CHECK(to_hex(derive_public(km, idx).serialize_compressed()) == v.pubkey_hex);
    CHECK(derive_address(km, idx).text() == v.address);
    CHECK(derive_address(km.public_part(), idx).text() == v.address);
  }
}

TEST_CASE("canonical address of private key 1") {
  auto pub = *secp256k1::mul_generator(Scalar::from_u64(1)).to_affine();
  CHECK(to_address(pub).text() == testing::kPrivKeyOneAddress);
}

TEST_CASE("derivation is deterministic and the index offset identity holds") {
  KeyMaterial km = test_key(1);
  DerivationIndex i{Domain::kGrind, 5}, j{Domain::kGrind, 9};
  CHECK(derive_private(km, i) == derive_private(km, i));
  CHECK(derive_private(km, i) - derive_private(km, j) == index_scalar(km.k(), i) - index_scalar(km.k(), j));
}

TEST_CASE("public path equals generator times private path for 1000 indices") {
  KeyMaterial km = test_key(2);
  KeyMaterial pub_only = km.public_part();
  std::mt19937_64 rng(2);
  for (int n = 0; n < 1000; ++n) {
    DerivationIndex idx{static_cast<Domain>(1 + rng() % 3), 1 + rng() % 1000000};
    auto expect = *secp256k1::mul_generator(derive_private(km, idx)).to_affine();
    REQUIRE(derive_public(pub_only, idx) == expect);
  }
}

TEST_CASE("signatures under derived private keys verify under derived public keys") {
  KeyMaterial km = test_key(3);
  Hash256 digest = crypto::sha256(from_hex("00112233"));
  for (std::uint64_t c = 1; c <= 20; ++c) {
    DerivationIndex idx{Domain::kGrind, c};
    Bytes sig = ecdsa::sign(derive_private(km, idx), digest);
    CHECK(ecdsa::verify(derive_public(km.public_part(), idx), digest, sig));
    CHECK_FALSE(ecdsa::verify(derive_public(km, {Domain::kGrind, c + 1}), digest, sig));
  }
}

TEST_CASE("derivation errors") {
  KeyMaterial km = test_key(4);
  CHECK_THROWS_AS(derive_private(km, {Domain::kGrind, 0}), Error);
  CHECK_THROWS_AS(derive_private(km.public_part(), {Domain::kGrind, 1}), Error);
  CHECK_THROWS_AS(KeyMaterial::from_private(Hash256{}, Scalar{}), Error);

  // y = -H(k || GRIND || 1) makes index 1 degenerate on both paths.
  Hash256 k{};
  Scalar y = index_scalar(k, {Domain::kGrind, 1}).negate();
  KeyMaterial bad = KeyMaterial::from_private(k, y);
  try {
    derive_private(bad, {Domain::kGrind, 1});
    FAIL("expected DegenerateIndex");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateIndex);
  }
  CHECK_FALSE(try_derive_public(bad, {Domain::kGrind, 1}).has_value());
  CHECK(try_derive_public(bad, {Domain::kGrind, 2}).has_value());
}

TEST_CASE("addresses round trip through base58check") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 1000; ++i) {
    Address a;
    for (auto& b : a.digest) b = static_cast<std::uint8_t>(rng());
    a.version = (i % 2) ? kP2shVersion : kP2pkhVersion;
    REQUIRE(Address::parse(a.text()) == a);
  }
  Address a = derive_address(test_key(5), {Domain::kGrind, 1});
  std::string t = a.text();
  t.back() = t.back() == 'z' ? 'y' : 'z';
  CHECK_THROWS_AS(Address::parse(t), Error);
}

TEST_CASE("signal addresses: pure, domain separated, distinct per counter") {
  KeyMaterial km = test_key(6);
  CHECK(signal_address(km, Channel::kHigh, 1) == signal_address(km, Channel::kHigh, 1));
  CHECK(signal_address(km, Channel::kHigh, 1) != signal_address(km, Channel::kMed, 1));
  std::set<Address> seen;
  for (std::uint64_t c = 1; c <= 3; ++c) seen.insert(signal_address(km, Channel::kMed, c));
  CHECK(seen.size() == 3);
}

TEST_CASE("key file round trip, public file omits y") {
  KeyMaterial km = test_key(7);
  std::string priv = format_key_file(km, true);
  std::string pub = format_key_file(km, false);
  CHECK(parse_key_file(priv) == km);
  CHECK(parse_key_file(pub) == km.public_part());
  CHECK(pub.find("\ny=") == std::string::npos);
  CHECK_THROWS_AS(parse_key_file("gy=00\nk=00\n"), Error);
  // Mismatched gy.
  std::string tampered = priv;
  auto pos = tampered.find("gy=") + 10;
  tampered[pos] = tampered[pos] == '0' ? '1' : '0';
  CHECK_THROWS_AS(parse_key_file(tampered), Error);
}

TEST_CASE("10,000 consecutive digests pass byte-frequency chi-square at 0.01") {
  KeyMaterial km = test_key(8);
  std::vector<std::uint8_t> bytes;
  for (std::uint64_t c = 1; c <= 10000; ++c) {
    auto a = derive_address(km, {Domain::kGrind, c});
    bytes.insert(bytes.end(), a.digest.begin(), a.digest.end());
  }
  CHECK(stats::byte_chi_square(bytes).p_value > 0.01);
}
