#ifndef SEALBID_PAILLIER_H_
#define SEALBID_PAILLIER_H_

#include <string>

#include "json.hpp"
#include "sealbid/bigint.h"
#include "sealbid/rng.h"

namespace sealbid::paillier {

// Element of Z*_{n^2}.
struct Ciphertext {
  BigInt value;
  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

// Element of Z_n.
struct Plaintext {
  BigInt value;
  friend bool operator==(const Plaintext&, const Plaintext&) = default;
};

// Encryption randomness r, a unit modulo n.
struct HelpValue {
  BigInt r;
  friend bool operator==(const HelpValue&, const HelpValue&) = default;
};

class PublicKey {
 public:
  // g is always n + 1.
  explicit PublicKey(BigInt n);

  const BigInt& n() const { return n_; }
  const BigInt& n_squared() const { return n_squared_; }
  const BigInt& g() const { return g_; }
  size_t bit_length() const { return BitLength(n_); }

  // Largest t with 2^t < n/2.
  unsigned max_range_bits() const;

  friend bool operator==(const PublicKey& a, const PublicKey& b) { return a.n_ == b.n_; }

 private:
  BigInt n_;
  BigInt n_squared_;
  BigInt g_;
};

class PrivateKey {
 public:
  // Validates p != q, both odd primes, and gcd(n, phi) = 1.
  PrivateKey(BigInt p, BigInt q);

  const BigInt& p() const { return p_; }
  const BigInt& q() const { return q_; }
  const BigInt& phi() const { return phi_; }
  const BigInt& mu() const { return mu_; }
  const PublicKey& public_key() const { return public_key_; }

 private:
  BigInt p_;
  BigInt q_;
  BigInt phi_;
  BigInt mu_;
  PublicKey public_key_;
};

enum class KeyMode { kProduction, kTest };

struct KeyPair {
  PublicKey public_key;
  PrivateKey private_key;
};

// Production mode accepts 512, 1024 or 2048 bits; test mode anything >= 16.
// p and q each have bit_length/2 bits and n has exactly bit_length bits.
KeyPair GenerateKeyPair(unsigned bit_length, Rng& rng, KeyMode mode = KeyMode::kProduction);

// Miller-Rabin rounds giving an error bound of at most 2^-80.
inline constexpr int kPrimalityRounds = 40;

// Throws kMalformedCiphertext unless c is a unit in [1, n^2).
void ValidateCiphertext(const PublicKey& pk, const Ciphertext& c);
void ValidateHelpValue(const PublicKey& pk, const HelpValue& r);

Ciphertext Encrypt(const PublicKey& pk, const Plaintext& m, const HelpValue& r);
Ciphertext EncryptRandom(const PublicKey& pk, const Plaintext& m, Rng& rng, HelpValue* used = nullptr);
Plaintext Decrypt(const PrivateKey& sk, const Ciphertext& c);

// Recovers the r with Encrypt(pk, m, r) == c. Requires Decrypt(c) == m.
HelpValue RecoverRandomness(const PrivateKey& sk, const Ciphertext& c, const Plaintext& m);

Ciphertext HomAdd(const PublicKey& pk, const Ciphertext& a, const Ciphertext& b);
Ciphertext HomScalarMul(const PublicKey& pk, const Ciphertext& c, const BigInt& k);
Ciphertext HomAddConst(const PublicKey& pk, const Ciphertext& c, const BigInt& k);
Ciphertext Invert(const PublicKey& pk, const Ciphertext& c);
Ciphertext Rerandomize(const PublicKey& pk, const Ciphertext& c, const HelpValue& r);

// r^n mod n^2: an encryption of zero under help value r.
BigInt ZeroEncryptionFactor(const PublicKey& pk, const BigInt& r);

nlohmann::json PublicKeyToJson(const PublicKey& pk);
PublicKey PublicKeyFromJson(const nlohmann::json& j);
nlohmann::json PrivateKeyToJson(const PrivateKey& sk);
PrivateKey PrivateKeyFromJson(const nlohmann::json& j);

}  // namespace sealbid::paillier

#endif  // SEALBID_PAILLIER_H_
