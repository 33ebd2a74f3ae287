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
#define OPENSSL_SUPPRESS_DEPRECATED
#include "stegoledger/ecdsa.hpp"

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/ecdsa.h>
#include <openssl/obj_mac.h>

#include <memory>

#include "stegoledger/errors.hpp"

namespace stegoledger::ecdsa {

namespace {

struct Deleter {
  void operator()(EC_KEY* p) const { EC_KEY_free(p); }
  void operator()(BIGNUM* p) const { BN_free(p); }
  void operator()(EC_POINT* p) const { EC_POINT_free(p); }
  void operator()(ECDSA_SIG* p) const { ECDSA_SIG_free(p); }
};

template <typename T>
using Owned = std::unique_ptr<T, Deleter>;

Owned<EC_KEY> new_key() {
  Owned<EC_KEY> key(EC_KEY_new_by_curve_name(NID_secp256k1));
  if (!key) throw Error(ErrorCode::kValidation, "OpenSSL lacks secp256k1");
  return key;
}

Owned<EC_KEY> private_key(const secp256k1::Scalar& k) {
  auto key = new_key();
  Hash256 raw = k.to_bytes();
  Owned<BIGNUM> bn(BN_bin2bn(raw.data(), static_cast<int>(raw.size()), nullptr));
  const EC_GROUP* group = EC_KEY_get0_group(key.get());
  Owned<EC_POINT> pub(EC_POINT_new(group));
  if (!bn || !pub || EC_KEY_set_private_key(key.get(), bn.get()) != 1 ||
      EC_POINT_mul(group, pub.get(), bn.get(), nullptr, nullptr, nullptr) != 1 ||
      EC_KEY_set_public_key(key.get(), pub.get()) != 1) {
    throw Error(ErrorCode::kValidation, "cannot load private key");
  }
  return key;
}

}  // namespace

Bytes sign(const secp256k1::Scalar& k, const Hash256& digest) {
  auto key = private_key(k);
  Owned<ECDSA_SIG> sig(ECDSA_do_sign(digest.data(), static_cast<int>(digest.size()), key.get()));
  if (!sig) throw Error(ErrorCode::kValidation, "signing failed");
  int len = i2d_ECDSA_SIG(sig.get(), nullptr);
  Bytes der(static_cast<std::size_t>(len));
  unsigned char* out = der.data();
  i2d_ECDSA_SIG(sig.get(), &out);
  return der;
}

bool verify(const secp256k1::AffinePoint& pub, const Hash256& digest, ByteView der) {
  auto key = new_key();
  auto encoded = pub.serialize_compressed();
  const unsigned char* p = encoded.data();
  EC_KEY* raw = key.get();
  if (!o2i_ECPublicKey(&raw, &p, static_cast<long>(encoded.size()))) return false;
  const unsigned char* s = der.data();
  Owned<ECDSA_SIG> sig(d2i_ECDSA_SIG(nullptr, &s, static_cast<long>(der.size())));
  if (!sig) return false;
  return ECDSA_do_verify(digest.data(), static_cast<int>(digest.size()), sig.get(), key.get()) == 1;
}

std::array<std::uint8_t, 33> openssl_public_key(const secp256k1::Scalar& k) {
  auto key = private_key(k);
  std::array<std::uint8_t, 33> out{};
  const EC_GROUP* group = EC_KEY_get0_group(key.get());
  if (EC_POINT_point2oct(group, EC_KEY_get0_public_key(key.get()), POINT_CONVERSION_COMPRESSED, out.data(),
                         out.size(), nullptr) != out.size()) {
    throw Error(ErrorCode::kValidation, "point serialization failed");
  }
  return out;
}

}  // namespace stegoledger::ecdsa
