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
#include "stegoledger/bits.hpp"

#include "stegoledger/errors.hpp"

namespace stegoledger {

BitString BitString::from_bytes(ByteView bytes) {
  BitString out;
  out.bits_.reserve(bytes.size() * 8);
  for (std::uint8_t b : bytes) out.push(b, 8);
  return out;
}

BitString BitString::from_string(std::string_view bits) {
  BitString out;
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error(ErrorCode::kValidation, "bit string must be 0/1");
    out.bits_.push_back(c == '1');
  }
  return out;
}

void BitString::push(std::uint64_t value, int width) {
  for (int i = width - 1; i >= 0; --i) bits_.push_back(static_cast<std::uint8_t>((value >> i) & 1));
}

void BitString::append(const BitString& other) { bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end()); }

std::uint64_t BitString::read(std::size_t pos, int width) const {
  if (width < 0 || width > 64 || pos + static_cast<std::size_t>(width) > bits_.size()) {
    throw Error(ErrorCode::kRangeError, "bit read out of range");
  }
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i) v = (v << 1) | bits_[pos + static_cast<std::size_t>(i)];
  return v;
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
  if (pos + len > bits_.size()) throw Error(ErrorCode::kRangeError, "bit slice out of range");
  BitString out;
  out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                   bits_.begin() + static_cast<std::ptrdiff_t>(pos + len));
  return out;
}

Bytes BitString::to_bytes() const {
  if (bits_.size() % 8 != 0) throw Error(ErrorCode::kValidation, "bit string is not byte aligned");
  Bytes out(bits_.size() / 8);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint8_t>(read(i * 8, 8));
  return out;
}

std::string BitString::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

}  // namespace stegoledger
