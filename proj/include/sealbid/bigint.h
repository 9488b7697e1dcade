#ifndef SEALBID_BIGINT_H_
#define SEALBID_BIGINT_H_

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sealbid {

using BigInt = mpz_class;

// Lowercase big-endian hex without leading zeros; zero is "0".
std::string ToHex(const BigInt& value);

// Strict inverse of ToHex: rejects uppercase, signs, prefixes and leading
// zeros so that every value has exactly one textual form.
BigInt FromHex(std::string_view hex);

std::string BytesToHex(std::span<const uint8_t> bytes);
std::vector<uint8_t> HexToBytes(std::string_view hex);

BigInt FromBytes(std::span<const uint8_t> bytes);

BigInt PowMod(const BigInt& base, const BigInt& exp, const BigInt& mod);

// Throws Error(kCritical) when value has no inverse modulo mod.
BigInt InvertMod(const BigInt& value, const BigInt& mod);

BigInt Gcd(const BigInt& a, const BigInt& b);

size_t BitLength(const BigInt& value);

// 2^k
BigInt PowerOfTwo(unsigned k);

}  // namespace sealbid

#endif  // SEALBID_BIGINT_H_
