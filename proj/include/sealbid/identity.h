#ifndef SEALBID_IDENTITY_H_
#define SEALBID_IDENTITY_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sealbid/rng.h"

namespace sealbid {

using Digest = std::array<uint8_t, 32>;

Digest Sha256(std::span<const uint8_t> data);
Digest Sha256(std::string_view data);

std::string DigestToHex(const Digest& d);
Digest DigestFromHex(std::string_view hex);

namespace identity {

// 32-byte bidder-generated identifier; the only handle the protocol layer
// ever uses for a bidder.
class Pseudonym {
 public:
  Pseudonym() = default;
  explicit Pseudonym(const Digest& bytes) : bytes_(bytes) {}

  static Pseudonym FromHex(std::string_view hex);
  std::string hex() const { return DigestToHex(bytes_); }
  const Digest& bytes() const { return bytes_; }

  friend auto operator<=>(const Pseudonym&, const Pseudonym&) = default;

 private:
  Digest bytes_{};
};

using Nonce = std::array<uint8_t, 16>;

Nonce FreshNonce(Rng& rng);

// SHA-256(auction_id || verification_key || nonce). The key and nonce have
// fixed lengths, so the concatenation is unambiguous.
Pseudonym GeneratePseudonym(std::span<const uint8_t> verification_key, const Nonce& nonce,
                            std::string_view auction_id);

struct SigningKeypair {
  std::string scheme_id;
  std::vector<uint8_t> public_key;
  std::vector<uint8_t> private_key;
};

class SignatureScheme {
 public:
  virtual ~SignatureScheme() = default;
  virtual std::string_view id() const = 0;
  virtual SigningKeypair Generate(Rng& rng) const = 0;
  // Throws Error(kFormat) on a malformed private key.
  virtual std::vector<uint8_t> Sign(const SigningKeypair& keypair,
                                    std::span<const uint8_t> message) const = 0;
  // Throws Error(kFormat) on a malformed public key; false on bad signature.
  virtual bool Verify(std::span<const uint8_t> public_key, std::span<const uint8_t> message,
                      std::span<const uint8_t> signature) const = 0;
};

// Build-time default provider.
const SignatureScheme& DefaultScheme();

// Throws Error(kFormat) for an unknown scheme id.
const SignatureScheme& SchemeById(std::string_view id);

std::vector<uint8_t> SignEntry(const SigningKeypair& keypair, std::span<const uint8_t> message);
std::vector<uint8_t> SignEntry(const SigningKeypair& keypair, std::string_view message);

bool VerifySignature(std::string_view scheme_id, std::span<const uint8_t> public_key,
                     std::span<const uint8_t> message, std::span<const uint8_t> signature);

}  // namespace identity
}  // namespace sealbid

#endif  // SEALBID_IDENTITY_H_
