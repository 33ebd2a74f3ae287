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

#ifndef STEGOLEDGER_TESTS_ORACLE_VECTORS_HPP_
#define STEGOLEDGER_TESTS_ORACLE_VECTORS_HPP_

#include <array>
#include <cstdint>

#include "stegoledger/hdw.hpp"

namespace stegoledger::testing {

// Frozen output of tests/oracle/hdw_oracle.py (pure-Python affine curve
// arithmetic, RIPEMD-160 and base58check). Regenerate with that script only.
struct OracleVector {
  const char* k_hex;
  const char* y_hex;
  hdw::Domain domain;
  std::uint64_t counter;
  const char* x_hex;
  const char* pubkey_hex;
  const char* address;
};

using hdw::Domain;

inline constexpr std::array<OracleVector, 10> kOracleVectors = {{
    {"0000000000000000000000000000000000000000000000000000000000000000", "0000000000000000000000000000000000000000000000000000000000000001", Domain::kGrind, 1u, "b4225d76ab019d9be83928519d30a02fae6712f6e8583021c555f845073f4d56", "0359d91ada8adfe825d47ed5910f76d1c235414c2133b75bb9dcf5f7bc55374ced", "1PywoGXxCoCyQAHPpA7Fn7D8YmX5hvpJsw"},
    {"0101010101010101010101010101010101010101010101010101010101010101", "0000000000000000000000000000000000000000000000000000000000000002", Domain::kGrind, 7u, "6f173fbabe52e3467f17a154fcfc28ce09a9da35be474ff016c38b96f4f71cb7", "03fa81fa004a76106539621f89dac08d51dff26ab1017315f2856a488743f7cc20", "1Pd3TD6W6H6mN1kBaLzBjmWsL3pUuYYLR8"},
    {"000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f", "0000000000000000000000000000000000000000000000000000000000000003", Domain::kSignalHigh, 1u, "5ea9e1f810cc28abeec0a7b52b8a750f16ba250b6c3d37a0cf93ae279293c868", "0245c65a2f0323751ef06aac3410d8bcd7f5ae19453b515713294331bb243b6a18", "1KKMtVunkLHRLEn8QKxLhHSpCSB19mx4Wo"},
    {"000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f", "0000000000000000000000000000000000000000000000000000000000000003", Domain::kSignalMed, 1u, "3e826ede8bff9ae5b2214af1185cd16249a317f9bb9442724e5a8666cb16697c", "02a8c451e57531a8f5d3ac13eccc2324b4327b10dfdbbd61e80204bb46bd414021", "15qvbSfzuxkizcSYP9mXLUEoPkjD3cHwCB"},
    {"ffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff", "fffffffffffffffffffffffffffffffebaaedce6af48a03bbfd25e8cd0364140", Domain::kGrind, 2u, "518702c6db0cce83dff04b1eabbad05aea1ef275cae8d4efa1612cb6b81c4256", "03486a77a7d6bc063a953c8acc9d42b8cf80a870baf9223b5f90d9b2daeda8daf8", "1MnQfKx1MsXP2pJiqjW5xqji7iRrTXZgjz"},
    {"a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5", "00000000000000000000000000000000000000000000000000000000deadbeef", Domain::kSignalMed, 42u, "628cf9cd30110fe90867129a2f4a146278cc49578a3565ae96281b6c1ef930ee", "03b9f689d6bb9e0b2473742cef9d0603bef7cbf51e4cf08c6fd3472cb100369750", "1PStB1eWJM6S5bZEAAtrJ9RnsHYoEyRh1H"},
    {"0eb026731d9ea3f870511f8c18daeb814eaa2c9e276082b204f2a962212fb5bd", "068953189be8796ad1bd1931c92e3d2abda9fbd1ddf7f05fa31ad54666bfd50d", Domain::kGrind, 1000u, "9d326b96d07c08c6179ea21d5698370705facd2c0edaab363241d727e8697826", "0373fe0aae73fa879fe1ff69cc94a46ccc31a5bd9901dccd539369e52d4f1ab2b7", "1NwW4t9UMaCbUciK3w3hSTKNLFEoWSHpXa"},
    {"532b20b0105c9883348558ed2711c7d23ea6b4ee718364a87e16fad4b3c3a029", "fa1fbcfbd0b0b18e67935a6ccbab02e80b35c1da0371f47bbdb34b7a5d676f84", Domain::kSignalHigh, 1099511627779u, "6ed7accd0b48aa82de0dc4c0aecdb3d02f166b1380fc5b0011712ade73ac27be", "02db90238a62c4d7d3338967c745338c9d0c91b8e4353f938fd29553e2878ecc6b", "1CEYhSUsdPiLNbCHKv4WY8Vju9cpKLK45a"},
    {"06a8db106a32a00f305948a18f7c301fe27f780eb07fa61b5e664d51c1011718", "0000000000000000000000000000000000000000000000000000000000000007", Domain::kGrind, 18446744073709551615u, "be83d7e544c33bc15b44a55a02c2cb5fdcac0dfb91dc4708645a86d3bb075034", "02bff6b20c4105a5daa4fc7418dee4320ea61e1504f636492d76f6b232cb21e765", "1M6W1oYpw4bVM3KXg1dHLCQg8Lc68LKB6B"},
    {"1010101010101010101010101010101010101010101010101010101010101010", "7fffffffffffffffffffffffffffffff5d576e7357a4501ddfe92f46681b20a0", Domain::kSignalMed, 3u, "f0168afa0afb57c153aa0619a6a75dec875021bad4082ff0a54641c5aa0b5380", "027693eb5925088a485e1abd2f80b497375abb9374d2b0f84bd8d73b14bce42be1", "1EixXKDPGxAEmTAHndMbCmMvtxFwiN3547"},
}};

inline constexpr const char* kPrivKeyOneAddress = "1BgGZ9tcN4rm9KBzDn7KprQz87SZ26SAMH";

}  // namespace stegoledger::testing

#endif  // STEGOLEDGER_TESTS_ORACLE_VECTORS_HPP_
