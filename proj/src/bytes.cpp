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
#include "stegoledger/bytes.hpp"

#include <algorithm>

#include "stegoledger/errors.hpp"

namespace stegoledger {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string to_hex(ByteView data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (std::uint8_t b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw Error(ErrorCode::kValidation, "odd-length hex string");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = hex_value(hex[2 * i]);
    int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw Error(ErrorCode::kValidation, "invalid hex digit");
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

template <std::size_t N>
std::array<std::uint8_t, N> array_from_hex(std::string_view hex) {
  Bytes raw = from_hex(hex);
  if (raw.size() != N) throw Error(ErrorCode::kValidation, "hex string has wrong length");
  std::array<std::uint8_t, N> out{};
  std::copy(raw.begin(), raw.end(), out.begin());
  return out;
}

template std::array<std::uint8_t, 20> array_from_hex<20>(std::string_view);
template std::array<std::uint8_t, 32> array_from_hex<32>(std::string_view);
template std::array<std::uint8_t, 33> array_from_hex<33>(std::string_view);

ByteView Reader::bytes(std::size_t n) {
  if (remaining() < n) throw Error(ErrorCode::kValidation, "truncated record");
  ByteView out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::uint64_t Reader::get(int width) {
  auto raw = bytes(static_cast<std::size_t>(width));
  std::uint64_t v = 0;
  for (std::uint8_t b : raw) v = (v << 8) | b;
  return v;
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kValidation: return "ValidationError";
    case ErrorCode::kDegenerateIndex: return "DegenerateIndex";
    case ErrorCode::kPermutationMismatch: return "PermutationMismatch";
    case ErrorCode::kRangeError: return "RangeError";
    case ErrorCode::kGrindExhausted: return "GrindExhausted";
    case ErrorCode::kTagCorruption: return "TagCorruption";
    case ErrorCode::kAuthError: return "AuthError";
    case ErrorCode::kIncomplete: return "Incomplete";
    case ErrorCode::kInsufficientSample: return "InsufficientSample";
    case ErrorCode::kRejected: return "Rejected";
    case ErrorCode::kNonceReuse: return "NonceReuse";
    case ErrorCode::kChainCorruption: return "ChainCorruption";
    case ErrorCode::kIo: return "IoError";
  }
  return "Error";
}

}  // namespace stegoledger
