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
#include "stegoledger/random.hpp"

#include <cmath>
#include <numbers>

#include "stegoledger/hash.hpp"

namespace stegoledger {

Drbg Drbg::from_label(std::string_view label, std::uint64_t value) {
  Writer w;
  w.bytes(ByteView(reinterpret_cast<const std::uint8_t*>(label.data()), label.size()));
  w.u64(value);
  return Drbg(crypto::sha256(w.data()));
}

void Drbg::fill(std::span<std::uint8_t> out) {
  // Position counts bytes; each 32-byte block is SHA-256(seed || block index).
  std::size_t done = 0;
  while (done < out.size()) {
    std::uint64_t block = position_ / 32;
    std::size_t offset = position_ % 32;
    Writer w;
    w.bytes(seed_);
    w.u64(block);
    Hash256 h = crypto::sha256(w.data());
    std::size_t take = std::min<std::size_t>(32 - offset, out.size() - done);
    std::copy_n(h.begin() + static_cast<std::ptrdiff_t>(offset), take, out.begin() + static_cast<std::ptrdiff_t>(done));
    done += take;
    position_ += take;
  }
}

std::uint64_t Drbg::next_u64() {
  std::array<std::uint8_t, 8> b{};
  fill(b);
  std::uint64_t v = 0;
  for (auto x : b) v = (v << 8) | x;
  return v;
}

std::uint64_t Drbg::below(std::uint64_t bound) {
  // Rejection sampling keeps the result unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

double Drbg::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Drbg::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace stegoledger
