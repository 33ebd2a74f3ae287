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
#ifndef STEGOLEDGER_TESTS_TEST_SUPPORT_HPP_
#define STEGOLEDGER_TESTS_TEST_SUPPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "stegoledger/hdw.hpp"
#include "stegoledger/ledger.hpp"
#include "stegoledger/random.hpp"
#include "stegoledger/session.hpp"

namespace stegoledger::testing {

inline hdw::KeyMaterial make_key(std::uint64_t seed) {
  Drbg rng = Drbg::from_label("test-key", seed);
  return hdw::KeyMaterial::generate(rng);
}

inline Bytes random_message(std::mt19937_64& rng, std::size_t len) {
  Bytes b(len);
  for (auto& x : b) x = static_cast<std::uint8_t>(rng());
  return b;
}

// A block without decoys.
inline ledger::NoiseProfile quiet() {
  ledger::NoiseProfile p;
  p.rate = 0.0;
  return p;
}

// Mines one block paying the session a coinbase and syncs its wallet.
inline void fund(session::Session& s, ledger::Ledger& chain, std::uint64_t seed = 1) {
  chain.mine_block(quiet(), seed, s.funding_address());
  s.sync_wallet(chain);
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("stegoledger-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace stegoledger::testing

#endif  // STEGOLEDGER_TESTS_TEST_SUPPORT_HPP_
