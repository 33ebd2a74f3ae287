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
#ifndef STEGOLEDGER_ECDSA_HPP_
#define STEGOLEDGER_ECDSA_HPP_

#include "stegoledger/bytes.hpp"
#include "stegoledger/secp256k1.hpp"

// ECDSA over secp256k1 backed by OpenSSL. Used to show that HDW-derived key
// pairs are usable signing keys; the derivation itself never touches OpenSSL.
namespace stegoledger::ecdsa {

// DER-encoded signature over a 32-byte digest.
Bytes sign(const secp256k1::Scalar& private_key, const Hash256& digest);
bool verify(const secp256k1::AffinePoint& public_key, const Hash256& digest, ByteView der_signature);

// Public key computed by OpenSSL's own curve code, as a cross-check.
std::array<std::uint8_t, 33> openssl_public_key(const secp256k1::Scalar& private_key);

}  // namespace stegoledger::ecdsa

#endif  // STEGOLEDGER_ECDSA_HPP_
