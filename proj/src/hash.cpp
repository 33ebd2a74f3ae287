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
// The one-shot low-level digests are still the fastest path in OpenSSL 3 and
// RIPEMD-160 is only reachable through EVP via the legacy provider there.
#define OPENSSL_SUPPRESS_DEPRECATED
#include "stegoledger/hash.hpp"

#include <openssl/ripemd.h>
#include <openssl/sha.h>

namespace stegoledger::crypto {

Hash256 sha256(ByteView data) {
  Hash256 out;
  SHA256(data.data(), data.size(), out.data());
  return out;
}

Hash256 sha256d(ByteView data) {
  Hash256 first = sha256(data);
  return sha256(first);
}

Hash160 ripemd160(ByteView data) {
  Hash160 out;
  RIPEMD160(data.data(), data.size(), out.data());
  return out;
}

Hash160 hash160(ByteView data) {
  Hash256 inner = sha256(data);
  return ripemd160(inner);
}

}  // namespace stegoledger::crypto
