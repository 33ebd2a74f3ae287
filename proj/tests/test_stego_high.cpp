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
#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include <doctest.h>
#include "stegoledger/errors.hpp"
#include "stegoledger/hash.hpp"
#include "stegoledger/stego_high.hpp"
#include "test_support.hpp"

using namespace stegoledger;
using namespace stegoledger::high;
using testing::random_message;

namespace {

Hash256 key_of(std::uint64_t seed) { return testing::make_key(seed).k(); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kIo;
}

std::vector<Hash160> sealed_fields(std::mt19937_64& rng, std::uint64_t counter, Drbg& pad) {
  const HighConfig cfg;
  NonceLedger nonces;
  const Bytes msg = random_message(rng, 1 + rng() % fragment_capacity(cfg));
  auto txs = encode_high(key_of(40), msg, 1, counter, cfg, pad, nonces);
  return txs.at(0).fields;
}

}  // namespace

TEST_CASE("header packing") {
  FrameHeader h{FrameType::kParamSwitch, 0xABCD, 0x123, 0xBEEF};
  const auto packed = h.pack();
  // version 3 in the top nibble, then 16 bits of length, 12 of id, 16 of index.
  CHECK(to_hex(packed) == "3abcd123beef");
  CHECK(FrameHeader::unpack(packed) == h);
  const std::array<std::uint8_t, 6> bad{0x70, 0, 0, 0, 0, 0};
  CHECK(code_of([&] { FrameHeader::unpack(bad); }) == ErrorCode::kValidation);
}

TEST_CASE("packing arithmetic") {
  const HighConfig cfg;  // six outputs of 20 bytes
  CHECK(fragment_capacity(cfg) == 120 - 6 - 16);
  // A one-byte body needs 6 + 1 + 16 = 23 bytes, so two output fields.
  CHECK(fields_for_body(1) == 2);
  CHECK(fields_for_body(0) == 2);
  CHECK(fields_for_body(fragment_capacity(cfg)) == 6);
  CHECK(fragment(FrameType::kData, 0, Bytes(1, 7), cfg).size() == 1);
  CHECK(fragment(FrameType::kData, 0, Bytes(98), cfg).size() == 1);
  CHECK(fragment(FrameType::kData, 0, Bytes(99), cfg).size() == 2);
  CHECK(fragment(FrameType::kData, 0, Bytes(), cfg).size() == 1);
  CHECK(code_of([&] { fragment(FrameType::kData, 0, Bytes(kMaxMessageBytes + 1), cfg); }) == ErrorCode::kValidation);
  CHECK(code_of([&] { fragment(FrameType::kData, 0x1000, Bytes(1), cfg); }) == ErrorCode::kValidation);
}

TEST_CASE("one-byte message seals into two fields") {
  Drbg pad = Drbg::from_label("pad", 1);
  NonceLedger nonces;
  const auto txs = encode_high(key_of(41), Bytes{0x42}, 0, 1, HighConfig{}, pad, nonces);
  REQUIRE(txs.size() == 1);
  CHECK(txs[0].fields.size() == 2);
  CHECK(decode_high(txs, key_of(41), HighConfig{}) == Bytes{0x42});
}

TEST_CASE("100 random messages of 1 to 8192 bytes round trip") {
  std::mt19937_64 rng(42);
  Drbg pad = Drbg::from_label("pad", 2);
  NonceLedger nonces;
  std::uint64_t counter = 1;
  for (int t = 0; t < 100; ++t) {
    for (const HighConfig cfg : {HighConfig{6, hdw::kP2pkhVersion}, HighConfig{3, hdw::kP2shVersion}}) {
      const std::size_t len = t == 0 ? kMaxMessageBytes : 1 + rng() % kMaxMessageBytes;
      const Bytes msg = random_message(rng, len);
      const auto txs = encode_high(key_of(42), msg, static_cast<std::uint16_t>(t), counter, cfg, pad, nonces);
      counter += txs.size();
      for (const auto& tx : txs) REQUIRE(tx.fields.size() <= static_cast<std::size_t>(cfg.max_outputs));
      REQUIRE(decode_high(txs, key_of(42), cfg) == msg);
    }
  }
}

TEST_CASE("the same message at different counters looks unrelated") {
  std::mt19937_64 rng(43);
  Drbg pad = Drbg::from_label("pad", 3);
  NonceLedger nonces;
  const Bytes msg = random_message(rng, 98);
  const auto a = encode_high(key_of(43), msg, 5, 10, HighConfig{}, pad, nonces);
  const auto b = encode_high(key_of(43), msg, 5, 11, HighConfig{}, pad, nonces);
  REQUIRE(a[0].fields.size() == b[0].fields.size());
  double total = 0;
  for (std::size_t i = 0; i < a[0].fields.size(); ++i) {
    int d = 0;
    for (std::size_t j = 0; j < kFieldBytes; ++j) d += std::popcount(static_cast<unsigned>(a[0].fields[i][j] ^ b[0].fields[i][j]));
    // Binomial(160, 1/2): mean 80, sd about 6.3.
    CHECK(std::abs(d - 80) <= 19);
    total += d;
  }
  CHECK(total / static_cast<double>(a[0].fields.size()) == doctest::Approx(80).epsilon(0.1));
}

TEST_CASE("any single flipped bit fails authentication") {
  std::mt19937_64 rng(44);
  Drbg pad = Drbg::from_label("pad", 4);
  NonceLedger nonces;
  const Bytes msg = random_message(rng, 60);
  const auto txs = encode_high(key_of(44), msg, 9, 3, HighConfig{}, pad, nonces);
  const auto& fields = txs[0].fields;
  for (std::size_t f = 0; f < fields.size(); ++f) {
    for (std::size_t bit = 0; bit < kFieldBytes * 8; ++bit) {
      auto tampered = fields;
      tampered[f][bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
      REQUIRE(code_of([&] { open_frame(key_of(44), 3, tampered, HighConfig{}); }) == ErrorCode::kAuthError);
    }
  }
  // Wrong key, wrong counter, dropped field.
  CHECK(code_of([&] { open_frame(key_of(45), 3, fields, HighConfig{}); }) == ErrorCode::kAuthError);
  CHECK(code_of([&] { open_frame(key_of(44), 4, fields, HighConfig{}); }) == ErrorCode::kAuthError);
  auto shorter = fields;
  shorter.pop_back();
  CHECK(code_of([&] { open_frame(key_of(44), 3, shorter, HighConfig{}); }) == ErrorCode::kAuthError);
}

TEST_CASE("fragments arriving out of order still reassemble") {
  std::mt19937_64 rng(46);
  Drbg pad = Drbg::from_label("pad", 6);
  NonceLedger nonces;
  const HighConfig cfg;
  for (int t = 0; t < 20; ++t) {
    const Bytes msg = random_message(rng, 200 + rng() % 2000);
    auto txs = encode_high(key_of(46), msg, static_cast<std::uint16_t>(t), 1000 * static_cast<std::uint64_t>(t) + 1, cfg,
                           pad, nonces);
    std::shuffle(txs.begin(), txs.end(), rng);
    REQUIRE(decode_high(txs, key_of(46), cfg) == msg);
    txs.pop_back();
    if (!txs.empty()) CHECK(code_of([&] { decode_high(txs, key_of(46), cfg); }) == ErrorCode::kIncomplete);
  }
}

TEST_CASE("reassembler ignores repeats of completed messages") {
  Drbg pad = Drbg::from_label("pad", 7);
  NonceLedger nonces;
  const HighConfig cfg;
  const auto txs = encode_high(key_of(47), Bytes(300, 1), 77, 1, cfg, pad, nonces);
  Reassembler r(cfg);
  std::optional<Message> done;
  for (const auto& tx : txs) {
    CHECK_FALSE(done);
    done = r.add(open_frame(key_of(47), tx.signal_counter, tx.fields, cfg));
  }
  REQUIRE(done);
  CHECK(done->msg_id == 77);
  CHECK(done->payload == Bytes(300, 1));
  CHECK_FALSE(r.add(open_frame(key_of(47), txs[0].signal_counter, txs[0].fields, cfg)));
  CHECK_FALSE(r.pending());
}

TEST_CASE("a sealed counter can never be sealed again") {
  Drbg pad = Drbg::from_label("pad", 8);
  NonceLedger nonces;
  const auto frames = fragment(FrameType::kData, 1, Bytes(10), HighConfig{});
  seal_frame(key_of(48), 5, frames[0], pad, nonces);
  CHECK(nonces.used(5));
  CHECK(code_of([&] { seal_frame(key_of(48), 5, frames[0], pad, nonces); }) == ErrorCode::kNonceReuse);
}

TEST_CASE("sealed fields pass the randomness check in at least 98 of 100 trials") {
  std::mt19937_64 rng(49);
  Drbg pad = Drbg::from_label("pad", 9);
  int stego_pass = 0, hash_pass = 0;
  std::uint64_t counter = 1;
  for (int t = 0; t < 100; ++t) {
    std::vector<Hash160> fields;
    while (fields.size() < 60) {
      auto f = sealed_fields(rng, counter++, pad);
      fields.insert(fields.end(), f.begin(), f.end());
    }
    stego_pass += randomness_check(fields).pass;
    // Genuine hash160 digests as the comparison population.
    std::vector<Hash160> genuine;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      genuine.push_back(crypto::hash160(random_message(rng, 33)));
    }
    hash_pass += randomness_check(genuine).pass;
  }
  CHECK(stego_pass >= 98);
  CHECK(hash_pass >= 98);
  CHECK(std::abs(stego_pass - hash_pass) <= 3);
}

TEST_CASE("degenerate fields fail the randomness check") {
  std::vector<Hash160> zeros(60);
  CHECK_FALSE(randomness_check(zeros).pass);
  CHECK(randomness_check(zeros).monobit.p_value < 1e-10);
  CHECK(code_of([&] { randomness_check(std::vector<Hash160>(29)); }) == ErrorCode::kInsufficientSample);
}
