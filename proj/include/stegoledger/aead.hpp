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
#ifndef STEGOLEDGER_AEAD_HPP_
#define STEGOLEDGER_AEAD_HPP_

#include <optional>

#include "stegoledger/bytes.hpp"

namespace stegoledger::crypto {

inline constexpr std::size_t kGcmTagSize = 16;
using GcmNonce = std::array<std::uint8_t, 12>;

// AES-256-GCM. Output is ciphertext || 16-byte tag.
Bytes aes_gcm_seal(const Hash256& key, const GcmNonce& nonce, ByteView plaintext);
// nullopt when authentication fails.
std::optional<Bytes> aes_gcm_open(const Hash256& key, const GcmNonce& nonce, ByteView sealed);

}  // namespace stegoledger::crypto

#endif  // STEGOLEDGER_AEAD_HPP_
