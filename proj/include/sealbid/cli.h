#ifndef SEALBID_CLI_H_
#define SEALBID_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace sealbid::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kRejected = 1;
inline constexpr int kVerificationFailed = 2;
inline constexpr int kIoError = 3;
inline constexpr int kUsage = 64;

// argv[0] is the program name.
int Run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace sealbid::cli

#endif  // SEALBID_CLI_H_
