#ifndef SEALBID_RNG_H_
#define SEALBID_RNG_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "sealbid/bigint.h"

namespace sealbid {

// ChaCha20 keystream generator. Seeded instances are reproducible across
// runs and platforms; OS-seeded instances draw their key from the system
// entropy pool. Not thread-safe: give each worker its own instance via
// Fork().
class Rng {
 public:
  using Seed = std::array<uint8_t, 32>;

  static Rng FromOsEntropy();
  static Rng FromSeed(uint64_t seed);
  static Rng FromSeedBytes(const Seed& seed);

  void Fill(std::span<uint8_t> out);
  uint64_t NextU64();

  // Uniform in [0, bound) by rejection; bound must be positive.
  uint64_t UniformBelow(uint64_t bound);

  // Uniform in [0, bound) by rejection; bound must be positive.
  BigInt BelowBig(const BigInt& bound);

  // Uniform element of Z*_n.
  BigInt UnitModulo(const BigInt& n);

  // Odd integer with exactly `bits` bits and the top two bits set.
  BigInt PrimeCandidate(unsigned bits);

  // Child generator keyed from this stream.
  Rng Fork();

  bool deterministic() const { return deterministic_; }

 private:
  Rng(const Seed& key, bool deterministic);
  void Refill();

  Seed key_;
  uint64_t block_counter_ = 0;
  std::vector<uint8_t> buffer_;
  size_t pos_ = 0;
  bool deterministic_;
};

}  // namespace sealbid

#endif  // SEALBID_RNG_H_
