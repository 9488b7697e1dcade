#include "sealbid/paillier.h"

#include "sealbid/error.h"

namespace sealbid::paillier {

namespace {

bool IsProbablePrime(const BigInt& v) {
  return mpz_probab_prime_p(v.get_mpz_t(), kPrimalityRounds) != 0;
}

// L(u) = (u - 1) / n, exact division.
BigInt L(const BigInt& u, const BigInt& n) {
  BigInt out = u - 1;
  mpz_divexact(out.get_mpz_t(), out.get_mpz_t(), n.get_mpz_t());
  return out;
}

BigInt PrimeWithBits(unsigned bits, Rng& rng) {
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    BigInt c = rng.PrimeCandidate(bits);
    if (IsProbablePrime(c)) return c;
  }
  throw Error(ErrorCode::kKeyGeneration, "no prime found");
}

BigInt ValidatedModulus(const BigInt& p, const BigInt& q) {
  if (p == q) throw Error(ErrorCode::kParameter, "p and q must differ");
  if (p < 3 || q < 3 || mpz_even_p(p.get_mpz_t()) || mpz_even_p(q.get_mpz_t()) ||
      !IsProbablePrime(p) || !IsProbablePrime(q)) {
    throw Error(ErrorCode::kParameter, "p and q must be odd primes");
  }
  return p * q;
}

}  // namespace

PublicKey::PublicKey(BigInt n) : n_(std::move(n)) {
  if (n_ < 15 || mpz_even_p(n_.get_mpz_t())) {
    throw Error(ErrorCode::kParameter, "Paillier modulus must be an odd composite");
  }
  n_squared_ = n_ * n_;
  g_ = n_ + 1;
}

unsigned PublicKey::max_range_bits() const {
  // 2^t < n/2  <=>  2^(t+1) < n
  unsigned t = 0;
  while (PowerOfTwo(t + 2) < n_) ++t;
  return t;
}

PrivateKey::PrivateKey(BigInt p, BigInt q)
    : p_(std::move(p)), q_(std::move(q)), public_key_(ValidatedModulus(p_, q_)) {
  phi_ = (p_ - 1) * (q_ - 1);
  if (Gcd(public_key_.n(), phi_) != 1) {
    throw Error(ErrorCode::kParameter, "gcd(n, phi(n)) != 1");
  }
  mu_ = InvertMod(phi_, public_key_.n());
}

KeyPair GenerateKeyPair(unsigned bit_length, Rng& rng, KeyMode mode) {
  if (mode == KeyMode::kProduction) {
    if (bit_length != 512 && bit_length != 1024 && bit_length != 2048) {
      throw Error(ErrorCode::kParameter, "production keys must be 512, 1024 or 2048 bits");
    }
  } else if (bit_length < 16) {
    throw Error(ErrorCode::kParameter, "test keys need at least 16 bits");
  }
  const unsigned half = bit_length / 2;
  for (;;) {
    BigInt p = PrimeWithBits(half, rng);
    BigInt q = PrimeWithBits(bit_length - half, rng);
    if (p == q) continue;
    // Top two bits of each factor set, so the product has exactly bit_length bits.
    if (BitLength(p * q) != bit_length) continue;
    if (Gcd(p * q, (p - 1) * (q - 1)) != 1) continue;
    PrivateKey sk(std::move(p), std::move(q));
    return KeyPair{sk.public_key(), sk};
  }
}

void ValidateCiphertext(const PublicKey& pk, const Ciphertext& c) {
  if (c.value < 1 || c.value >= pk.n_squared() || Gcd(c.value, pk.n()) != 1) {
    throw Error(ErrorCode::kMalformedCiphertext, "ciphertext is not a unit modulo n^2");
  }
}

void ValidateHelpValue(const PublicKey& pk, const HelpValue& r) {
  if (r.r < 1 || r.r >= pk.n() || Gcd(r.r, pk.n()) != 1) {
    throw Error(ErrorCode::kInvalidHelpValue, "help value must be a unit modulo n");
  }
}

BigInt ZeroEncryptionFactor(const PublicKey& pk, const BigInt& r) {
  return PowMod(r, pk.n(), pk.n_squared());
}

Ciphertext Encrypt(const PublicKey& pk, const Plaintext& m, const HelpValue& r) {
  if (m.value < 0 || m.value >= pk.n()) {
    throw Error(ErrorCode::kDomain, "plaintext outside [0, n)");
  }
  ValidateHelpValue(pk, r);
  // g^m = (1 + n)^m = 1 + m n  (mod n^2)
  BigInt gm = (1 + m.value * pk.n()) % pk.n_squared();
  BigInt c = gm * ZeroEncryptionFactor(pk, r.r) % pk.n_squared();
  return Ciphertext{std::move(c)};
}

Ciphertext EncryptRandom(const PublicKey& pk, const Plaintext& m, Rng& rng, HelpValue* used) {
  HelpValue r{rng.UnitModulo(pk.n())};
  Ciphertext c = Encrypt(pk, m, r);
  if (used != nullptr) *used = std::move(r);
  return c;
}

Plaintext Decrypt(const PrivateKey& sk, const Ciphertext& c) {
  const PublicKey& pk = sk.public_key();
  ValidateCiphertext(pk, c);
  BigInt u = PowMod(c.value, sk.phi(), pk.n_squared());
  BigInt m = L(u, pk.n()) * sk.mu() % pk.n();
  return Plaintext{std::move(m)};
}

HelpValue RecoverRandomness(const PrivateKey& sk, const Ciphertext& c, const Plaintext& m) {
  const PublicKey& pk = sk.public_key();
  if (Decrypt(sk, c) != m) {
    throw Error(ErrorCode::kInconsistent, "ciphertext does not decrypt to the claimed plaintext");
  }
  // c * g^-m = r^n (mod n^2); reduce mod n and take the n-th root mod n.
  BigInt g_neg_m = (1 + (pk.n() - m.value) * pk.n()) % pk.n_squared();
  BigInt rn = c.value * g_neg_m % pk.n_squared() % pk.n();
  BigInt root_exp = InvertMod(pk.n(), sk.phi());
  HelpValue r{PowMod(rn, root_exp, pk.n())};
  if (Encrypt(pk, m, r) != c) {
    throw Error(ErrorCode::kInconsistent, "recovered randomness does not reproduce the ciphertext");
  }
  return r;
}

Ciphertext HomAdd(const PublicKey& pk, const Ciphertext& a, const Ciphertext& b) {
  return Ciphertext{a.value * b.value % pk.n_squared()};
}

Ciphertext HomScalarMul(const PublicKey& pk, const Ciphertext& c, const BigInt& k) {
  if (k < 0) throw Error(ErrorCode::kDomain, "scalar must be non-negative");
  return Ciphertext{PowMod(c.value, k, pk.n_squared())};
}

Ciphertext HomAddConst(const PublicKey& pk, const Ciphertext& c, const BigInt& k) {
  if (k < 0 || k >= pk.n()) throw Error(ErrorCode::kDomain, "constant outside [0, n)");
  BigInt gk = (1 + k * pk.n()) % pk.n_squared();
  return Ciphertext{c.value * gk % pk.n_squared()};
}

Ciphertext Invert(const PublicKey& pk, const Ciphertext& c) {
  return Ciphertext{InvertMod(c.value, pk.n_squared())};
}

Ciphertext Rerandomize(const PublicKey& pk, const Ciphertext& c, const HelpValue& r) {
  ValidateHelpValue(pk, r);
  return Ciphertext{c.value * ZeroEncryptionFactor(pk, r.r) % pk.n_squared()};
}

nlohmann::json PublicKeyToJson(const PublicKey& pk) {
  return {{"n", ToHex(pk.n())}, {"g", ToHex(pk.g())}};
}

PublicKey PublicKeyFromJson(const nlohmann::json& j) {
  try {
    PublicKey pk(FromHex(j.at("n").get<std::string>()));
    if (FromHex(j.at("g").get<std::string>()) != pk.g()) {
      throw Error(ErrorCode::kFormat, "public key g must equal n + 1");
    }
    return pk;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("bad public key: ") + e.what());
  }
}

nlohmann::json PrivateKeyToJson(const PrivateKey& sk) {
  return {{"p", ToHex(sk.p())}, {"q", ToHex(sk.q())}};
}

PrivateKey PrivateKeyFromJson(const nlohmann::json& j) {
  try {
    return PrivateKey(FromHex(j.at("p").get<std::string>()), FromHex(j.at("q").get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("bad private key: ") + e.what());
  }
}

}  // namespace sealbid::paillier
