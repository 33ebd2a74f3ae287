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
#ifndef STEGOLEDGER_HASH_HPP_
#define STEGOLEDGER_HASH_HPP_

#include "stegoledger/bytes.hpp"

namespace stegoledger::crypto {

Hash256 sha256(ByteView data);
Hash256 sha256d(ByteView data);
Hash160 ripemd160(ByteView data);
// RIPEMD-160(SHA-256(data)).
Hash160 hash160(ByteView data);

}  // namespace stegoledger::crypto

#endif  // STEGOLEDGER_HASH_HPP_
