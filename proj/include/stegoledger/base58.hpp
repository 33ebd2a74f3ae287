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
#ifndef STEGOLEDGER_BASE58_HPP_
#define STEGOLEDGER_BASE58_HPP_

#include <string>
#include <string_view>

#include "stegoledger/bytes.hpp"

namespace stegoledger::base58 {

std::string encode(ByteView data);
// Throws Error(kValidation) on characters outside the alphabet.
Bytes decode(std::string_view text);

// payload || first four bytes of sha256d(payload)
std::string encode_check(ByteView payload);
// Throws Error(kValidation) when the checksum does not match.
Bytes decode_check(std::string_view text);

}  // namespace stegoledger::base58

#endif  // STEGOLEDGER_BASE58_HPP_
