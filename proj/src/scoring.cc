#include "sealbid/scoring.h"

#include <algorithm>

#include "sealbid/error.h"

namespace sealbid::scoring {

namespace {

bool IsDecimalDigits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool OnGrid(const Rational& value, const BigInt& scale) {
  Rational scaled = value * Rational(scale);
  scaled.canonicalize();
  return scaled.get_den() == 1;
}

const char* DirectionName(Direction d) { return d == Direction::kBenefit ? "benefit" : "cost"; }

}  // namespace

Rational ParseRational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  Rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!IsDecimalDigits(num) || !IsDecimalDigits(den) || BigInt(std::string(den)) == 0) {
      throw Error(ErrorCode::kFormat, "bad rational '" + std::string(text) + "'");
    }
    out = Rational(BigInt(std::string(num)), BigInt(std::string(den)));
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot), frac = body.substr(dot + 1);
    if (!IsDecimalDigits(whole) || !IsDecimalDigits(frac)) {
      throw Error(ErrorCode::kFormat, "bad decimal '" + std::string(text) + "'");
    }
    BigInt den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    out = Rational(BigInt(std::string(whole)) * den + BigInt(std::string(frac)), den);
  } else {
    if (!IsDecimalDigits(body)) throw Error(ErrorCode::kFormat, "bad number '" + std::string(text) + "'");
    out = Rational(BigInt(std::string(body)));
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

std::string FormatRational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str(10);
}

void ScoringRule::Validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kParameter, msg); };
  if (t < 8) fail("t must be at least 8");
  if (value_scale < 1) fail("value_scale must be positive");
  if (price_ceiling <= 0) fail("price_ceiling must be positive");
  const BigInt bound = PowerOfTwo(t);
  if (!OnGrid(price_ceiling, value_scale) || price_ceiling * value_scale >= bound) {
    fail("price_ceiling must lie on the value grid below 2^t / value_scale");
  }
  Rational total = 0;
  for (const AttributeSpec& a : attributes) {
    if (a.name.empty()) fail("attribute without a name");
    if (a.weight < 0) fail("attribute '" + a.name + "' has a negative weight");
    total += a.weight;
    if (a.breakpoints.empty()) fail("attribute '" + a.name + "' has no breakpoints");
    for (size_t i = 0; i < a.breakpoints.size(); ++i) {
      const Breakpoint& b = a.breakpoints[i];
      if (b.value < 0 || b.value > 1) fail("attribute '" + a.name + "' valuation leaves [0,1]");
      if (i > 0) {
        const Breakpoint& prev = a.breakpoints[i - 1];
        if (b.x <= prev.x) fail("attribute '" + a.name + "' breakpoints not strictly increasing");
        if (a.direction == Direction::kBenefit && b.value < prev.value) {
          fail("benefit attribute '" + a.name + "' valuation decreases");
        }
        if (a.direction == Direction::kCost && b.value > prev.value) {
          fail("cost attribute '" + a.name + "' valuation increases");
        }
      }
    }
    if (a.domain_min() < 0) fail("attribute '" + a.name + "' domain must be non-negative");
    if (a.domain_max() * value_scale >= bound) {
      fail("attribute '" + a.name + "' domain exceeds 2^t / value_scale");
    }
  }
  if (total > 1) fail("attribute weights sum above 1");
}

Rational EvaluateValuation(const AttributeSpec& spec, const Rational& x) {
  const auto& bp = spec.breakpoints;
  if (bp.empty() || x < spec.domain_min() || x > spec.domain_max()) {
    throw Error(ErrorCode::kDomain,
                "value " + FormatRational(x) + " outside domain of '" + spec.name + "'");
  }
  // First breakpoint with bp.x >= x.
  auto it = std::lower_bound(bp.begin(), bp.end(), x,
                             [](const Breakpoint& b, const Rational& v) { return b.x < v; });
  if (it->x == x) return it->value;
  const Breakpoint& hi = *it;
  const Breakpoint& lo = *(it - 1);
  Rational out = lo.value + (x - lo.x) / (hi.x - lo.x) * (hi.value - lo.value);
  out.canonicalize();
  return out;
}

void CheckBid(const ScoringRule& rule, const BidValues& bid) {
  if (bid.attributes.size() != rule.attributes.size()) {
    throw Error(ErrorCode::kDomain, "bid has " + std::to_string(bid.attributes.size()) +
                                        " attribute values, terms define " +
                                        std::to_string(rule.attributes.size()));
  }
  for (size_t i = 0; i < bid.attributes.size(); ++i) {
    const AttributeSpec& spec = rule.attributes[i];
    const Rational& x = bid.attributes[i];
    if (x < spec.domain_min() || x > spec.domain_max()) {
      throw Error(ErrorCode::kDomain,
                  "value " + FormatRational(x) + " outside domain of '" + spec.name + "'");
    }
    if (!OnGrid(x, rule.value_scale)) {
      throw Error(ErrorCode::kDomain, "value of '" + spec.name + "' is not a multiple of 1/value_scale");
    }
  }
  if (bid.price < 0) throw Error(ErrorCode::kDomain, "negative price");
  if (bid.price > rule.price_ceiling) throw Error(ErrorCode::kDomain, "price above price_ceiling");
  if (!OnGrid(bid.price, rule.value_scale)) {
    throw Error(ErrorCode::kDomain, "price is not a multiple of 1/value_scale");
  }
}

Rational ComputeRawScore(const ScoringRule& rule, const BidValues& bid) {
  CheckBid(rule, bid);
  Rational aggregate = 0;
  for (size_t i = 0; i < rule.attributes.size(); ++i) {
    aggregate += rule.attributes[i].weight * EvaluateValuation(rule.attributes[i], bid.attributes[i]);
  }
  Rational score = aggregate - bid.price / rule.price_ceiling;
  score.canonicalize();
  return score;
}

BigInt EncodeScore(const Rational& raw, unsigned t) {
  if (raw < -1 || raw > 1) throw Error(ErrorCode::kDomain, "raw score outside [-1, 1]");
  Rational scaled = (raw + 1) * Rational(PowerOfTwo(t) - 1) / 2;
  scaled.canonicalize();
  // floor(scaled + 1/2) = floor((2 num + den) / (2 den))
  BigInt num = 2 * scaled.get_num() + scaled.get_den();
  BigInt den = 2 * scaled.get_den();
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

BigInt ScoreBid(const ScoringRule& rule, const BidValues& bid) {
  return EncodeScore(ComputeRawScore(rule, bid), rule.t);
}

BigInt EncodeFixedPoint(const Rational& value, const BigInt& scale, unsigned t) {
  Rational scaled = value * Rational(scale);
  scaled.canonicalize();
  if (scaled.get_den() != 1) throw Error(ErrorCode::kDomain, "value is off the fixed-point grid");
  BigInt out = scaled.get_num();
  if (out < 0 || out >= PowerOfTwo(t)) throw Error(ErrorCode::kDomain, "fixed-point value exceeds 2^t");
  return out;
}

Rational DecodeFixedPoint(const BigInt& encoded, const BigInt& scale) {
  Rational out(encoded, scale);
  out.canonicalize();
  return out;
}

size_t DetermineWinnerIndex(const std::vector<ScoredBid>& bids) {
  if (bids.empty()) throw Error(ErrorCode::kNoWinner, "no valid bids");
  size_t best = 0;
  for (size_t i = 1; i < bids.size(); ++i) {
    const ScoredBid& b = bids[i];
    const ScoredBid& w = bids[best];
    if (b.score > w.score || (b.score == w.score && b.board_seq < w.board_seq)) best = i;
  }
  return best;
}

identity::Pseudonym DetermineWinner(const std::vector<ScoredBid>& bids) {
  return bids[DetermineWinnerIndex(bids)].pseudonym;
}

nlohmann::json RuleToJson(const ScoringRule& rule) {
  nlohmann::json attrs = nlohmann::json::array();
  for (const AttributeSpec& a : rule.attributes) {
    nlohmann::json bps = nlohmann::json::array();
    for (const Breakpoint& b : a.breakpoints) {
      bps.push_back(nlohmann::json::array({FormatRational(b.x), FormatRational(b.value)}));
    }
    attrs.push_back({{"name", a.name},
                     {"weight", FormatRational(a.weight)},
                     {"breakpoints", bps},
                     {"direction", DirectionName(a.direction)}});
  }
  return {{"attributes", attrs},
          {"price_ceiling", FormatRational(rule.price_ceiling)},
          {"value_scale", rule.value_scale.get_str()},
          {"t", rule.t}};
}

ScoringRule RuleFromJson(const nlohmann::json& j) {
  try {
    ScoringRule rule;
    for (const auto& a : j.at("attributes")) {
      AttributeSpec spec;
      spec.name = a.at("name").get<std::string>();
      spec.weight = ParseRational(a.at("weight").get<std::string>());
      for (const auto& b : a.at("breakpoints")) {
        if (!b.is_array() || b.size() != 2) throw Error(ErrorCode::kFormat, "breakpoint must be a pair");
        spec.breakpoints.push_back(
            {ParseRational(b[0].get<std::string>()), ParseRational(b[1].get<std::string>())});
      }
      std::string dir = a.value("direction", "benefit");
      if (dir == "benefit") {
        spec.direction = Direction::kBenefit;
      } else if (dir == "cost") {
        spec.direction = Direction::kCost;
      } else {
        throw Error(ErrorCode::kFormat, "direction must be 'benefit' or 'cost'");
      }
      rule.attributes.push_back(std::move(spec));
    }
    rule.price_ceiling = ParseRational(j.at("price_ceiling").get<std::string>());
    if (j.contains("value_scale")) {
      const auto& vs = j.at("value_scale");
      rule.value_scale = vs.is_string() ? BigInt(vs.get<std::string>()) : BigInt(vs.get<unsigned long>());
    }
    rule.t = j.value("t", 16u);
    return rule;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("bad scoring rule: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::kFormat, "bad value_scale");
  }
}

nlohmann::json BidValuesToJson(const BidValues& bid) {
  nlohmann::json attrs = nlohmann::json::array();
  for (const Rational& x : bid.attributes) attrs.push_back(FormatRational(x));
  return {{"attributes", attrs}, {"price", FormatRational(bid.price)}};
}

BidValues BidValuesFromJson(const nlohmann::json& j) {
  try {
    BidValues bid;
    for (const auto& x : j.at("attributes")) bid.attributes.push_back(ParseRational(x.get<std::string>()));
    bid.price = ParseRational(j.at("price").get<std::string>());
    return bid;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("bad bid values: ") + e.what());
  }
}

}  // namespace sealbid::scoring
