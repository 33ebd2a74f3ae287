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
#ifndef STEGOLEDGER_BITS_HPP_
#define STEGOLEDGER_BITS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stegoledger/bytes.hpp"

namespace stegoledger {

// Growable MSB-first bit sequence. Integers are written and read with their
// most significant bit first.
class BitString {
 public:
  BitString() = default;
  static BitString from_bytes(ByteView bytes);
  // "0101..." form, for tests and debugging.
  static BitString from_string(std::string_view bits);

  void push(std::uint64_t value, int width);
  void append(const BitString& other);
  std::uint64_t read(std::size_t pos, int width) const;
  BitString slice(std::size_t pos, std::size_t len) const;

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void clear() { bits_.clear(); }

  // Requires size() % 8 == 0.
  Bytes to_bytes() const;
  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace stegoledger

#endif  // STEGOLEDGER_BITS_HPP_
