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
#include "stegoledger/aead.hpp"

#include <openssl/evp.h>

#include <memory>

#include "stegoledger/errors.hpp"

namespace stegoledger::crypto {

namespace {

struct CtxDeleter {
  void operator()(EVP_CIPHER_CTX* c) const { EVP_CIPHER_CTX_free(c); }
};
using Ctx = std::unique_ptr<EVP_CIPHER_CTX, CtxDeleter>;

Ctx make_ctx(const Hash256& key, const GcmNonce& nonce, bool encrypt) {
  Ctx ctx(EVP_CIPHER_CTX_new());
  if (!ctx || EVP_CipherInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr, encrypt) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, static_cast<int>(nonce.size()), nullptr) != 1 ||
      EVP_CipherInit_ex(ctx.get(), nullptr, nullptr, key.data(), nonce.data(), encrypt) != 1) {
    throw Error(ErrorCode::kValidation, "AES-GCM initialisation failed");
  }
  return ctx;
}

}  // namespace

Bytes aes_gcm_seal(const Hash256& key, const GcmNonce& nonce, ByteView plaintext) {
  Ctx ctx = make_ctx(key, nonce, true);
  Bytes out(plaintext.size() + kGcmTagSize);
  int len = 0;
  if (!plaintext.empty() &&
      EVP_EncryptUpdate(ctx.get(), out.data(), &len, plaintext.data(), static_cast<int>(plaintext.size())) != 1) {
    throw Error(ErrorCode::kValidation, "AES-GCM encryption failed");
  }
  int tail = 0;
  if (EVP_EncryptFinal_ex(ctx.get(), out.data() + len, &tail) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kGcmTagSize, out.data() + plaintext.size()) != 1) {
    throw Error(ErrorCode::kValidation, "AES-GCM finalisation failed");
  }
  return out;
}

std::optional<Bytes> aes_gcm_open(const Hash256& key, const GcmNonce& nonce, ByteView sealed) {
  if (sealed.size() < kGcmTagSize) return std::nullopt;
  const std::size_t body = sealed.size() - kGcmTagSize;
  Ctx ctx = make_ctx(key, nonce, false);
  Bytes out(body);
  int len = 0;
  if (body > 0 && EVP_DecryptUpdate(ctx.get(), out.data(), &len, sealed.data(), static_cast<int>(body)) != 1) {
    return std::nullopt;
  }
  Bytes tag(sealed.begin() + static_cast<std::ptrdiff_t>(body), sealed.end());
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kGcmTagSize, tag.data()) != 1) return std::nullopt;
  int tail = 0;
  if (EVP_DecryptFinal_ex(ctx.get(), out.data() + len, &tail) != 1) return std::nullopt;
  return out;
}

}  // namespace stegoledger::crypto
