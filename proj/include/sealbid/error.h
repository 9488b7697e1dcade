#ifndef SEALBID_ERROR_H_
#define SEALBID_ERROR_H_

#include <stdexcept>
#include <string>

namespace sealbid {

enum class ErrorCode {
  kDomain,             // value outside its admissible range
  kInvalidHelpValue,   // gcd(r, n) != 1
  kMalformedCiphertext,
  kInconsistent,       // claimed plaintext/randomness does not match cipher
  kCritical,           // a non-invertible element revealed a factor of n
  kParameter,          // e.g. 2^t >= n/2
  kKeyGeneration,
  kRejected,           // protocol-level rejection (late bid, duplicate, ...)
  kNoWinner,
  kIo,
  kFormat,             // malformed serialized input
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sealbid

#endif  // SEALBID_ERROR_H_
