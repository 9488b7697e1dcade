#ifndef SEALBID_CANONICAL_JSON_H_
#define SEALBID_CANONICAL_JSON_H_

#include <string>

#include "json.hpp"

namespace sealbid {

// Sorted keys, no insignificant whitespace, decimal integers. Floating-point
// numbers are rejected: every signed byte string must be reproducible.
std::string CanonicalJson(const nlohmann::json& value);

// Parses and re-checks that `text` is already in canonical form.
nlohmann::json ParseCanonicalJson(const std::string& text);

}  // namespace sealbid

#endif  // SEALBID_CANONICAL_JSON_H_
