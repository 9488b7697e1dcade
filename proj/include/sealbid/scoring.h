#ifndef SEALBID_SCORING_H_
#define SEALBID_SCORING_H_

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sealbid/bigint.h"
#include "sealbid/identity.h"

namespace sealbid::scoring {

using Rational = mpq_class;

// Accepts "7", "-3", "3/5" and "12.25"; the result is canonicalised.
Rational ParseRational(std::string_view text);
// "num/den", or just "num" when den = 1.
std::string FormatRational(const Rational& q);

enum class Direction { kBenefit, kCost };

struct Breakpoint {
  Rational x;
  Rational value;
};

// Piecewise-linear valuation f_r with weight w_r. For a cost attribute the
// breakpoint values descend as x grows.
struct AttributeSpec {
  std::string name;
  Rational weight;
  std::vector<Breakpoint> breakpoints;
  Direction direction = Direction::kBenefit;

  const Rational& domain_min() const { return breakpoints.front().x; }
  const Rational& domain_max() const { return breakpoints.back().x; }
};

// Everything the buyer publishes about how bids are scored.
struct ScoringRule {
  std::vector<AttributeSpec> attributes;
  Rational price_ceiling;
  // Attribute values and prices are multiples of 1/value_scale and are
  // encrypted as the integer value * value_scale.
  BigInt value_scale{100};
  unsigned t = 16;

  // Throws Error(kParameter) describing the first violated constraint.
  void Validate() const;
};

struct BidValues {
  std::vector<Rational> attributes;
  Rational price;
};

// Throws Error(kDomain) when x lies outside the breakpoint domain.
Rational EvaluateValuation(const AttributeSpec& spec, const Rational& x);

// Domain checks on a bid: attribute count, each x inside its domain and on
// the fixed-point grid, 0 <= price <= price_ceiling on the grid.
void CheckBid(const ScoringRule& rule, const BidValues& bid);

// sum_r w_r f_r(x_r) - price / price_ceiling, in [-1, 1].
Rational ComputeRawScore(const ScoringRule& rule, const BidValues& bid);

// round_half_up((raw + 1) (2^t - 1) / 2), in [0, 2^t).
BigInt EncodeScore(const Rational& raw, unsigned t);

// ComputeRawScore followed by EncodeScore with the rule's t.
BigInt ScoreBid(const ScoringRule& rule, const BidValues& bid);

// value * scale as an integer; throws Error(kDomain) if not integral or
// outside [0, 2^t).
BigInt EncodeFixedPoint(const Rational& value, const BigInt& scale, unsigned t);
Rational DecodeFixedPoint(const BigInt& encoded, const BigInt& scale);

struct ScoredBid {
  identity::Pseudonym pseudonym;
  BigInt score;
  uint64_t board_seq = 0;
};

// Maximum score wins; ties go to the smallest board sequence number.
// Returns the index into `bids`. Throws Error(kNoWinner) on empty input.
size_t DetermineWinnerIndex(const std::vector<ScoredBid>& bids);
identity::Pseudonym DetermineWinner(const std::vector<ScoredBid>& bids);

nlohmann::json RuleToJson(const ScoringRule& rule);
ScoringRule RuleFromJson(const nlohmann::json& j);

nlohmann::json BidValuesToJson(const BidValues& bid);
BidValues BidValuesFromJson(const nlohmann::json& j);

}  // namespace sealbid::scoring

#endif  // SEALBID_SCORING_H_
