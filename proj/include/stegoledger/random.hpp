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
#ifndef STEGOLEDGER_RANDOM_HPP_
#define STEGOLEDGER_RANDOM_HPP_

#include <cstdint>
#include <span>
#include <string_view>

#include "stegoledger/bytes.hpp"

namespace stegoledger {

// Deterministic byte stream: block i = SHA-256(seed || i). Its whole state is
// (seed, position), so sessions can persist and resume it exactly.
class Drbg {
 public:
  explicit Drbg(const Hash256& seed, std::uint64_t position = 0) : seed_(seed), position_(position) {}
  static Drbg from_label(std::string_view label, std::uint64_t value);

  void fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();
  // Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform();
  // Standard normal via Box-Muller.
  double normal();

  const Hash256& seed() const { return seed_; }
  std::uint64_t position() const { return position_; }

 private:
  Hash256 seed_;
  std::uint64_t position_;
};

}  // namespace stegoledger

#endif  // STEGOLEDGER_RANDOM_HPP_
