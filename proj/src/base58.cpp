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
#include "stegoledger/base58.hpp"

#include <algorithm>
#include <array>

#include "stegoledger/errors.hpp"
#include "stegoledger/hash.hpp"

namespace stegoledger::base58 {

namespace {

constexpr std::string_view kAlphabet = "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";

constexpr std::array<int, 128> make_index() {
  std::array<int, 128> idx{};
  for (auto& v : idx) v = -1;
  for (std::size_t i = 0; i < kAlphabet.size(); ++i) idx[static_cast<unsigned char>(kAlphabet[i])] = static_cast<int>(i);
  return idx;
}

constexpr auto kIndex = make_index();

}  // namespace

std::string encode(ByteView data) {
  std::size_t zeros = 0;
  while (zeros < data.size() && data[zeros] == 0) ++zeros;

  // log(256) / log(58) ~= 1.37
  std::vector<std::uint8_t> b58((data.size() - zeros) * 138 / 100 + 1);
  std::size_t length = 0;
  for (std::size_t i = zeros; i < data.size(); ++i) {
    int carry = data[i];
    std::size_t j = 0;
    for (auto it = b58.rbegin(); (carry != 0 || j < length) && it != b58.rend(); ++it, ++j) {
      carry += 256 * (*it);
      *it = static_cast<std::uint8_t>(carry % 58);
      carry /= 58;
    }
    length = j;
  }
  auto it = b58.begin() + static_cast<std::ptrdiff_t>(b58.size() - length);
  while (it != b58.end() && *it == 0) ++it;

  std::string out(zeros, '1');
  for (; it != b58.end(); ++it) out.push_back(kAlphabet[*it]);
  return out;
}

Bytes decode(std::string_view text) {
  std::size_t ones = 0;
  while (ones < text.size() && text[ones] == '1') ++ones;

  // log(58) / log(256) ~= 0.733
  std::vector<std::uint8_t> b256((text.size() - ones) * 733 / 1000 + 1);
  std::size_t length = 0;
  for (std::size_t i = ones; i < text.size(); ++i) {
    auto c = static_cast<unsigned char>(text[i]);
    int carry = c < 128 ? kIndex[c] : -1;
    if (carry < 0) throw Error(ErrorCode::kValidation, "invalid base58 character");
    std::size_t j = 0;
    for (auto it = b256.rbegin(); (carry != 0 || j < length) && it != b256.rend(); ++it, ++j) {
      carry += 58 * (*it);
      *it = static_cast<std::uint8_t>(carry % 256);
      carry /= 256;
    }
    length = j;
  }
  auto it = b256.begin() + static_cast<std::ptrdiff_t>(b256.size() - length);
  while (it != b256.end() && *it == 0) ++it;

  Bytes out(ones, 0);
  out.insert(out.end(), it, b256.end());
  return out;
}

std::string encode_check(ByteView payload) {
  Bytes buf(payload.begin(), payload.end());
  Hash256 check = crypto::sha256d(payload);
  buf.insert(buf.end(), check.begin(), check.begin() + 4);
  return encode(buf);
}

Bytes decode_check(std::string_view text) {
  Bytes raw = decode(text);
  if (raw.size() < 4) throw Error(ErrorCode::kValidation, "base58check string too short");
  ByteView payload(raw.data(), raw.size() - 4);
  Hash256 check = crypto::sha256d(payload);
  if (!std::equal(check.begin(), check.begin() + 4, raw.end() - 4)) {
    throw Error(ErrorCode::kValidation, "base58check checksum mismatch");
  }
  raw.resize(raw.size() - 4);
  return raw;
}

}  // namespace stegoledger::base58
