#include "sealbid/identity.h"

#include <sodium.h>

#include "sealbid/bigint.h"
#include "sealbid/error.h"

namespace sealbid {

Digest Sha256(std::span<const uint8_t> data) {
  Digest out;
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return out;
}

Digest Sha256(std::string_view data) {
  return Sha256(std::span(reinterpret_cast<const uint8_t*>(data.data()), data.size()));
}

std::string DigestToHex(const Digest& d) { return BytesToHex(d); }

Digest DigestFromHex(std::string_view hex) {
  std::vector<uint8_t> bytes = HexToBytes(hex);
  if (bytes.size() != 32) throw Error(ErrorCode::kFormat, "digest must be 32 bytes");
  Digest out;
  std::copy(bytes.begin(), bytes.end(), out.begin());
  return out;
}

namespace identity {

namespace {

class Ed25519Scheme : public SignatureScheme {
 public:
  std::string_view id() const override { return "ed25519"; }

  SigningKeypair Generate(Rng& rng) const override {
    if (sodium_init() < 0) throw Error(ErrorCode::kKeyGeneration, "libsodium unavailable");
    uint8_t seed[crypto_sign_SEEDBYTES];
    rng.Fill(seed);
    SigningKeypair kp{std::string(id()), std::vector<uint8_t>(crypto_sign_PUBLICKEYBYTES),
                      std::vector<uint8_t>(crypto_sign_SECRETKEYBYTES)};
    crypto_sign_seed_keypair(kp.public_key.data(), kp.private_key.data(), seed);
    sodium_memzero(seed, sizeof(seed));
    return kp;
  }

  std::vector<uint8_t> Sign(const SigningKeypair& keypair,
                            std::span<const uint8_t> message) const override {
    if (keypair.private_key.size() != crypto_sign_SECRETKEYBYTES) {
      throw Error(ErrorCode::kFormat, "malformed ed25519 private key");
    }
    std::vector<uint8_t> sig(crypto_sign_BYTES);
    crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(),
                         keypair.private_key.data());
    return sig;
  }

  bool Verify(std::span<const uint8_t> public_key, std::span<const uint8_t> message,
              std::span<const uint8_t> signature) const override {
    if (public_key.size() != crypto_sign_PUBLICKEYBYTES) {
      throw Error(ErrorCode::kFormat, "malformed ed25519 public key");
    }
    if (signature.size() != crypto_sign_BYTES) return false;
    return crypto_sign_verify_detached(signature.data(), message.data(), message.size(),
                                       public_key.data()) == 0;
  }
};

const Ed25519Scheme kEd25519;

}  // namespace

Pseudonym Pseudonym::FromHex(std::string_view hex) { return Pseudonym(DigestFromHex(hex)); }

Nonce FreshNonce(Rng& rng) {
  Nonce n;
  rng.Fill(n);
  return n;
}

Pseudonym GeneratePseudonym(std::span<const uint8_t> verification_key, const Nonce& nonce,
                            std::string_view auction_id) {
  std::vector<uint8_t> material(auction_id.begin(), auction_id.end());
  material.insert(material.end(), verification_key.begin(), verification_key.end());
  material.insert(material.end(), nonce.begin(), nonce.end());
  return Pseudonym(Sha256(material));
}

const SignatureScheme& DefaultScheme() { return kEd25519; }

const SignatureScheme& SchemeById(std::string_view id) {
  if (id == kEd25519.id()) return kEd25519;
  throw Error(ErrorCode::kFormat, "unknown signature scheme '" + std::string(id) + "'");
}

std::vector<uint8_t> SignEntry(const SigningKeypair& keypair, std::span<const uint8_t> message) {
  return SchemeById(keypair.scheme_id).Sign(keypair, message);
}

std::vector<uint8_t> SignEntry(const SigningKeypair& keypair, std::string_view message) {
  return SignEntry(keypair,
                   std::span(reinterpret_cast<const uint8_t*>(message.data()), message.size()));
}

bool VerifySignature(std::string_view scheme_id, std::span<const uint8_t> public_key,
                     std::span<const uint8_t> message, std::span<const uint8_t> signature) {
  return SchemeById(scheme_id).Verify(public_key, message, signature);
}

}  // namespace identity
}  // namespace sealbid
