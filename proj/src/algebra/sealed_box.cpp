// Copyright 2026 The HEEZ Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "heez/algebra/sealed_box.hpp"

#include <openssl/evp.h>

#include <memory>

#include "heez/algebra/hash.hpp"
#include "heez/error.hpp"

namespace heez::algebra {

namespace {

struct CtxFree {
  void operator()(EVP_CIPHER_CTX* c) const { EVP_CIPHER_CTX_free(c); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CtxFree>;

Digest256 derive_key(const G1& ephemeral, const G1& shared) {
  ByteWriter w;
  w.raw(to_bytes("HEEZ-SEAL-v1"));
  w.raw(ephemeral.to_bytes());
  w.raw(shared.to_bytes());
  return sha256(w.bytes());
}

}  // namespace

Bytes aead_seal(const AeadKey& key, const AeadNonce& nonce, ByteSpan plaintext) {
  Bytes out(plaintext.size() + 16);
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  int len = 0;
  if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(), nonce.data()) != 1 ||
      EVP_EncryptUpdate(ctx.get(), out.data(), &len, plaintext.data(),
                        static_cast<int>(plaintext.size())) != 1 ||
      EVP_EncryptFinal_ex(ctx.get(), out.data() + len, &len) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, 16, out.data() + plaintext.size()) != 1) {
    throw Error(Errc::invalid_argument, "aead seal failure");
  }
  return out;
}

std::optional<Bytes> aead_open(const AeadKey& key, const AeadNonce& nonce, ByteSpan sealed) {
  if (sealed.size() < 16) return std::nullopt;
  std::size_t ct_len = sealed.size() - 16;
  Bytes tag(sealed.end() - 16, sealed.end());
  Bytes out(ct_len);
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  int len = 0;
  if (EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(), nonce.data()) != 1 ||
      EVP_DecryptUpdate(ctx.get(), out.data(), &len, sealed.data(), static_cast<int>(ct_len)) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, 16, tag.data()) != 1 ||
      EVP_DecryptFinal_ex(ctx.get(), out.data() + len, &len) != 1) {
    return std::nullopt;
  }
  return out;
}

BoxKeyPair BoxKeyPair::generate(Rng& rng) {
  Scalar s = rng.random_scalar();
  return {s, s * G1::generator()};
}

Bytes seal(const G1& recipient, ByteSpan plaintext, Rng& rng) {
  Scalar k = rng.random_scalar();
  G1 ephemeral = k * G1::generator();
  Digest256 key = derive_key(ephemeral, k * recipient);
  AeadNonce nonce{};
  rng.fill(nonce);

  Bytes out;
  auto enc = ephemeral.to_bytes();
  out.insert(out.end(), enc.begin(), enc.end());
  out.insert(out.end(), nonce.begin(), nonce.end());
  Bytes ct = aead_seal(key, nonce, plaintext);
  out.insert(out.end(), ct.begin(), ct.end());
  return out;
}

std::optional<Bytes> open_sealed(const Scalar& secret, ByteSpan sealed) {
  if (sealed.size() < kSealOverhead) return std::nullopt;
  G1 ephemeral;
  try {
    ephemeral = G1::from_bytes(sealed.first(G1::kEncodedSize));
  } catch (const Error&) {
    return std::nullopt;
  }
  Digest256 key = derive_key(ephemeral, secret * ephemeral);
  AeadNonce nonce{};
  std::copy_n(sealed.begin() + G1::kEncodedSize, nonce.size(), nonce.begin());
  return aead_open(key, nonce, sealed.subspan(G1::kEncodedSize + nonce.size()));
}

}  // namespace heez::algebra
