#include "sealbid/scoring.h"

#include <gtest/gtest.h>

#include "sealbid/error.h"
#include "sealbid/rng.h"

namespace sealbid::scoring {
namespace {

Rational Q(const char* s) { return ParseRational(s); }

AttributeSpec Linear(const char* name, const char* weight) {
  return AttributeSpec{name, Q(weight), {{Q("0"), Q("0")}, {Q("1"), Q("1")}}, Direction::kBenefit};
}

ScoringRule TwoAttributeRule() {
  ScoringRule rule;
  rule.attributes = {Linear("quality", "3/5"), Linear("speed", "2/5")};
  rule.price_ceiling = Q("1");
  rule.value_scale = 100;
  rule.t = 16;
  return rule;
}

TEST(RationalTest, Parse) {
  EXPECT_EQ(Q("3/5"), Rational(3, 5));
  EXPECT_EQ(Q("12.25"), Rational(49, 4));
  EXPECT_EQ(Q("-7"), Rational(-7));
  EXPECT_EQ(Q("6/4"), Rational(3, 2));
  EXPECT_EQ(FormatRational(Q("6/4")), "3/2");
  EXPECT_EQ(FormatRational(Q("5")), "5");
  EXPECT_THROW(Q("1/0"), Error);
  EXPECT_THROW(Q("abc"), Error);
  EXPECT_THROW(Q("1e5"), Error);
}

TEST(ValuationTest, Interpolation) {
  AttributeSpec lin = Linear("x", "1");
  EXPECT_EQ(EvaluateValuation(lin, Q("1/2")), Q("1/2"));
  EXPECT_EQ(EvaluateValuation(lin, Q("1")), Q("1"));

  AttributeSpec kinked{"delivery", Q("1"),
                       {{Q("0"), Q("0")}, {Q("10"), Q("2/5")}, {Q("20"), Q("1")}},
                       Direction::kBenefit};
  EXPECT_EQ(EvaluateValuation(kinked, Q("15")), Q("7/10"));
  EXPECT_EQ(EvaluateValuation(kinked, Q("10")), Q("2/5"));
  EXPECT_EQ(EvaluateValuation(kinked, Q("0")), Q("0"));
  EXPECT_THROW(EvaluateValuation(kinked, Q("21")), Error);
  EXPECT_THROW(EvaluateValuation(kinked, Q("-1")), Error);
}

TEST(RawScoreTest, Examples) {
  ScoringRule rule = TwoAttributeRule();
  // f values (0.8, 0.5), P_norm = 0.3
  EXPECT_EQ(ComputeRawScore(rule, {{Q("0.8"), Q("0.5")}, Q("0.3")}), Q("19/50"));

  ScoringRule zero = rule;
  zero.attributes[0].weight = 0;
  zero.attributes[1].weight = 0;
  EXPECT_EQ(ComputeRawScore(zero, {{Q("0.8"), Q("0.5")}, Q("0.3")}), Q("-3/10"));

  EXPECT_GT(ComputeRawScore(rule, {{Q("0.8"), Q("0.5")}, Q("0.29")}),
            ComputeRawScore(rule, {{Q("0.8"), Q("0.5")}, Q("0.3")}));
}

TEST(RawScoreTest, RejectsMalformedBids) {
  ScoringRule rule = TwoAttributeRule();
  EXPECT_THROW(ComputeRawScore(rule, {{Q("0.8")}, Q("0.3")}), Error);             // count
  EXPECT_THROW(ComputeRawScore(rule, {{Q("1.2"), Q("0.5")}, Q("0.3")}), Error);   // domain
  EXPECT_THROW(ComputeRawScore(rule, {{Q("0.8"), Q("0.5")}, Q("1.01")}), Error);  // ceiling
  EXPECT_THROW(ComputeRawScore(rule, {{Q("0.805"), Q("0.5")}, Q("0.3")}), Error); // off grid
}

TEST(EncodeScoreTest, Examples) {
  EXPECT_EQ(EncodeScore(Q("-1"), 16), 0);
  EXPECT_EQ(EncodeScore(Q("1"), 16), 65535);
  // round(1.38 * 65535 / 2) = round(45219.15)
  EXPECT_EQ(EncodeScore(Q("0.38"), 16), 45219);
  // (0 + 1) * 255 / 2 = 127.5 rounds half up
  EXPECT_EQ(EncodeScore(Q("0"), 8), 128);
  EXPECT_THROW(EncodeScore(Q("1.01"), 16), Error);
}

TEST(EncodeScoreTest, MonotoneOnRandomPairs) {
  Rng rng = Rng::FromSeed(3);
  const unsigned t = 16;
  const Rational gap = Rational(2) * Rational(1, PowerOfTwo(t));
  for (int i = 0; i < 2000; ++i) {
    Rational a(static_cast<long>(rng.UniformBelow(200001)) - 100000, 100000);
    Rational b(static_cast<long>(rng.UniformBelow(200001)) - 100000, 100000);
    a.canonicalize();
    b.canonicalize();
    if (a > b) std::swap(a, b);
    BigInt ea = EncodeScore(a, t), eb = EncodeScore(b, t);
    ASSERT_LE(ea, eb);
    if (b - a > gap) ASSERT_LT(ea, eb);
    ASSERT_GE(ea, 0);
    ASSERT_LT(ea, PowerOfTwo(t));
  }
}

TEST(WinnerTest, Examples) {
  identity::Pseudonym a(Sha256("a")), b(Sha256("b"));
  EXPECT_EQ(DetermineWinner({{a, 5, 3}}), a);
  EXPECT_EQ(DetermineWinner({{a, 10, 1}, {b, 10, 2}}), a);
  EXPECT_EQ(DetermineWinner({{b, 10, 2}, {a, 10, 1}}), a);
  EXPECT_EQ(DetermineWinner({{a, 9, 1}, {b, 10, 2}}), b);
  try {
    DetermineWinner({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoWinner);
  }
}

TEST(WinnerTest, MatchesLinearScanOracle) {
  Rng rng = Rng::FromSeed(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ScoredBid> bids;
    for (uint64_t i = 0; i < 50; ++i) {
      // Small score range forces ties.
      bids.push_back({identity::Pseudonym(Sha256(std::to_string(i))),
                      BigInt(static_cast<long>(rng.UniformBelow(20))), 100 - i});
    }
    size_t expect = 0;
    for (size_t i = 0; i < bids.size(); ++i) {
      const bool higher = bids[i].score > bids[expect].score;
      const bool tie_earlier = bids[i].score == bids[expect].score && bids[i].board_seq < bids[expect].board_seq;
      if (higher || tie_earlier) expect = i;
    }
    ASSERT_EQ(DetermineWinnerIndex(bids), expect);
  }
}

TEST(RuleTest, Validation) {
  ScoringRule rule = TwoAttributeRule();
  EXPECT_NO_THROW(rule.Validate());

  ScoringRule heavy = rule;
  heavy.attributes[0].weight = Q("4/5");
  EXPECT_THROW(heavy.Validate(), Error);

  ScoringRule unordered = rule;
  unordered.attributes[0].breakpoints = {{Q("1"), Q("0")}, {Q("1"), Q("1")}};
  EXPECT_THROW(unordered.Validate(), Error);

  ScoringRule outside = rule;
  outside.attributes[0].breakpoints[1].value = Q("3/2");
  EXPECT_THROW(outside.Validate(), Error);

  ScoringRule wrong_direction = rule;
  wrong_direction.attributes[0].direction = Direction::kCost;
  EXPECT_THROW(wrong_direction.Validate(), Error);

  ScoringRule small_t = rule;
  small_t.t = 7;
  EXPECT_THROW(small_t.Validate(), Error);

  ScoringRule too_wide = rule;
  too_wide.price_ceiling = 1000;  // 1000 * 100 >= 2^16
  EXPECT_THROW(too_wide.Validate(), Error);

  ScoringRule price_only = rule;
  price_only.attributes.clear();
  EXPECT_NO_THROW(price_only.Validate());
  EXPECT_EQ(ComputeRawScore(price_only, {{}, Q("0.25")}), Q("-1/4"));
}

TEST(RuleTest, JsonRoundtrip) {
  ScoringRule rule = TwoAttributeRule();
  rule.attributes[1].direction = Direction::kCost;
  rule.attributes[1].breakpoints = {{Q("0"), Q("1")}, {Q("5/2"), Q("1/3")}};
  ScoringRule back = RuleFromJson(RuleToJson(rule));
  EXPECT_EQ(RuleToJson(back), RuleToJson(rule));
  EXPECT_EQ(back.attributes[1].direction, Direction::kCost);
  EXPECT_EQ(back.attributes[1].breakpoints[1].x, Q("5/2"));
}

TEST(FixedPointTest, Encoding) {
  EXPECT_EQ(EncodeFixedPoint(Q("12.5"), 10, 16), 125);
  EXPECT_EQ(DecodeFixedPoint(125, 10), Q("25/2"));
  EXPECT_THROW(EncodeFixedPoint(Q("12.55"), 10, 16), Error);
  EXPECT_THROW(EncodeFixedPoint(Q("7000"), 10, 16), Error);
  EXPECT_THROW(EncodeFixedPoint(Q("-1"), 10, 16), Error);
}

TEST(MonotonicityTest, PriceAndBenefitValuations) {
  ScoringRule rule = TwoAttributeRule();
  Rng rng = Rng::FromSeed(8);
  for (int i = 0; i < 500; ++i) {
    auto grid = [&] { return Rational(static_cast<long>(rng.UniformBelow(101)), 100); };
    BidValues bid{{grid(), grid()}, grid()};
    bid.attributes[0].canonicalize();
    bid.attributes[1].canonicalize();
    bid.price.canonicalize();
    Rational base = ComputeRawScore(rule, bid);
    if (bid.price < 1) {
      BidValues pricier = bid;
      pricier.price += Rational(1, 100);
      ASSERT_LT(ComputeRawScore(rule, pricier), base);
    }
    if (bid.attributes[0] < 1) {
      BidValues better = bid;
      better.attributes[0] += Rational(1, 100);
      ASSERT_GE(ComputeRawScore(rule, better), base);
    }
  }
}

}  // namespace
}  // namespace sealbid::scoring
