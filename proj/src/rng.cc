#include "sealbid/rng.h"

#include <sodium.h>

#include <cstring>

#include "sealbid/error.h"

namespace sealbid {

namespace {

constexpr size_t kBufferSize = 4096;

void EnsureSodium() {
  static const int rc = sodium_init();
  if (rc < 0) throw Error(ErrorCode::kKeyGeneration, "libsodium failed to initialise");
}

}  // namespace

Rng::Rng(const Seed& key, bool deterministic)
    : key_(key), buffer_(kBufferSize), pos_(kBufferSize), deterministic_(deterministic) {}

Rng Rng::FromOsEntropy() {
  EnsureSodium();
  Seed key;
  randombytes_buf(key.data(), key.size());
  return Rng(key, false);
}

Rng Rng::FromSeed(uint64_t seed) {
  EnsureSodium();
  uint8_t material[16] = {'s', 'e', 'a', 'l', 'b', 'i', 'd', '/'};
  for (int i = 0; i < 8; ++i) material[8 + i] = static_cast<uint8_t>(seed >> (56 - 8 * i));
  Seed key;
  crypto_hash_sha256(key.data(), material, sizeof(material));
  return Rng(key, true);
}

Rng Rng::FromSeedBytes(const Seed& seed) {
  EnsureSodium();
  return Rng(seed, true);
}

void Rng::Refill() {
  uint8_t nonce[crypto_stream_chacha20_NONCEBYTES];
  for (size_t i = 0; i < sizeof(nonce); ++i) {
    nonce[i] = static_cast<uint8_t>(block_counter_ >> (8 * i));
  }
  ++block_counter_;
  crypto_stream_chacha20(buffer_.data(), buffer_.size(), nonce, key_.data());
  pos_ = 0;
}

void Rng::Fill(std::span<uint8_t> out) {
  size_t done = 0;
  while (done < out.size()) {
    if (pos_ == buffer_.size()) Refill();
    size_t take = std::min(out.size() - done, buffer_.size() - pos_);
    std::memcpy(out.data() + done, buffer_.data() + pos_, take);
    pos_ += take;
    done += take;
  }
}

uint64_t Rng::NextU64() {
  uint8_t bytes[8];
  Fill(bytes);
  uint64_t v = 0;
  for (uint8_t b : bytes) v = v << 8 | b;
  return v;
}

uint64_t Rng::UniformBelow(uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kDomain, "UniformBelow(0)");
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    uint64_t v = NextU64();
    if (v < limit) return v % bound;
  }
}

BigInt Rng::BelowBig(const BigInt& bound) {
  if (sgn(bound) <= 0) throw Error(ErrorCode::kDomain, "BelowBig bound must be positive");
  const size_t bits = BitLength(bound);
  std::vector<uint8_t> bytes((bits + 7) / 8);
  const unsigned spare = static_cast<unsigned>(bytes.size() * 8 - bits);
  for (;;) {
    Fill(bytes);
    bytes[0] &= static_cast<uint8_t>(0xff >> spare);
    BigInt v = FromBytes(bytes);
    if (v < bound) return v;
  }
}

BigInt Rng::UnitModulo(const BigInt& n) {
  for (;;) {
    BigInt r = BelowBig(n);
    if (r != 0 && Gcd(r, n) == 1) return r;
  }
}

BigInt Rng::PrimeCandidate(unsigned bits) {
  if (bits < 3) throw Error(ErrorCode::kDomain, "prime candidates need at least 3 bits");
  BigInt v = BelowBig(PowerOfTwo(bits));
  mpz_setbit(v.get_mpz_t(), bits - 1);
  mpz_setbit(v.get_mpz_t(), bits - 2);
  mpz_setbit(v.get_mpz_t(), 0);
  return v;
}

Rng Rng::Fork() {
  Seed child;
  Fill(child);
  return Rng(child, deterministic_);
}

}  // namespace sealbid
