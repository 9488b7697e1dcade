#include "sealbid/bigint.h"

#include "sealbid/error.h"

namespace sealbid {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kInvalidHelpValue: return "invalid-help-value";
    case ErrorCode::kMalformedCiphertext: return "malformed-ciphertext";
    case ErrorCode::kInconsistent: return "inconsistent";
    case ErrorCode::kCritical: return "critical";
    case ErrorCode::kParameter: return "parameter";
    case ErrorCode::kKeyGeneration: return "key-generation";
    case ErrorCode::kRejected: return "rejected";
    case ErrorCode::kNoWinner: return "no-winner";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kFormat: return "format";
  }
  return "unknown";
}

std::string ToHex(const BigInt& value) {
  if (sgn(value) < 0) throw Error(ErrorCode::kDomain, "negative value has no hex form");
  return value.get_str(16);
}

BigInt FromHex(std::string_view hex) {
  if (hex.empty()) throw Error(ErrorCode::kFormat, "empty hex string");
  if (hex.size() > 1 && hex.front() == '0') {
    throw Error(ErrorCode::kFormat, "hex integer has leading zeros");
  }
  for (char c : hex) {
    bool digit = c >= '0' && c <= '9';
    bool lower = c >= 'a' && c <= 'f';
    if (!digit && !lower) {
      throw Error(ErrorCode::kFormat, "invalid hex digit in '" + std::string(hex) + "'");
    }
  }
  return BigInt(std::string(hex), 16);
}

std::string BytesToHex(std::span<const uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

std::vector<uint8_t> HexToBytes(std::string_view hex) {
  if (hex.size() % 2 != 0) throw Error(ErrorCode::kFormat, "odd-length byte string");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw Error(ErrorCode::kFormat, "invalid hex digit in byte string");
  };
  std::vector<uint8_t> out(hex.size() / 2);
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return out;
}

BigInt FromBytes(std::span<const uint8_t> bytes) {
  BigInt out;
  if (!bytes.empty()) {
    mpz_import(out.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  }
  return out;
}

BigInt PowMod(const BigInt& base, const BigInt& exp, const BigInt& mod) {
  BigInt out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return out;
}

BigInt InvertMod(const BigInt& value, const BigInt& mod) {
  BigInt out;
  if (mpz_invert(out.get_mpz_t(), value.get_mpz_t(), mod.get_mpz_t()) == 0) {
    throw Error(ErrorCode::kCritical, "element is not invertible modulo the group order");
  }
  return out;
}

BigInt Gcd(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

size_t BitLength(const BigInt& value) {
  if (value == 0) return 0;
  return mpz_sizeinbase(value.get_mpz_t(), 2);
}

BigInt PowerOfTwo(unsigned k) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, k);
  return out;
}

}  // namespace sealbid
