#include "sealbid/canonical_json.h"

#include "sealbid/error.h"

namespace sealbid {

namespace {

void RejectFloats(const nlohmann::json& v) {
  if (v.is_number_float()) throw Error(ErrorCode::kFormat, "floating-point value in canonical JSON");
  if (v.is_structured()) {
    for (const auto& child : v) RejectFloats(child);
  }
}

}  // namespace

std::string CanonicalJson(const nlohmann::json& value) {
  RejectFloats(value);
  return value.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict);
}

nlohmann::json ParseCanonicalJson(const std::string& text) {
  nlohmann::json value;
  try {
    value = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("invalid JSON: ") + e.what());
  }
  if (CanonicalJson(value) != text) throw Error(ErrorCode::kFormat, "JSON is not in canonical form");
  return value;
}

}  // namespace sealbid
