#include "sealbid/simulation.h"

#include <algorithm>
#include <chrono>

#include "sealbid/error.h"

namespace sealbid::simulation {

using scoring::Rational;

namespace {

constexpr int64_t kPriceCeiling = 1000;
constexpr int64_t kValueScale = 10;

paillier::KeyMode ModeFor(unsigned bits) {
  return bits == 512 || bits == 1024 || bits == 2048 ? paillier::KeyMode::kProduction
                                                     : paillier::KeyMode::kTest;
}

Rational RandomGridPoint(const Rational& lo, const Rational& hi, Rng& rng) {
  // lo and hi lie on the 1/kValueScale grid.
  Rational steps_q = (hi - lo) * kValueScale;
  steps_q.canonicalize();
  const uint64_t steps = steps_q.get_num().get_ui();
  Rational out = lo + Rational(static_cast<long>(rng.UniformBelow(steps + 1)), kValueScale);
  out.canonicalize();
  return out;
}

}  // namespace

scoring::ScoringRule RandomRule(size_t attributes, unsigned t, Rng& rng) {
  scoring::ScoringRule rule;
  rule.t = t;
  rule.value_scale = kValueScale;
  rule.price_ceiling = kPriceCeiling;

  std::vector<uint64_t> raw_weights;
  uint64_t total = 1 + rng.UniformBelow(5);  // slack keeps the sum at most 1
  for (size_t i = 0; i < attributes; ++i) {
    raw_weights.push_back(1 + rng.UniformBelow(10));
    total += raw_weights.back();
  }
  for (size_t i = 0; i < attributes; ++i) {
    scoring::AttributeSpec spec;
    spec.name = "attr" + std::to_string(i);
    spec.weight = Rational(static_cast<long>(raw_weights[i]), static_cast<long>(total));
    spec.weight.canonicalize();
    spec.direction = rng.UniformBelow(2) == 0 ? scoring::Direction::kBenefit : scoring::Direction::kCost;

    const size_t points = 2 + rng.UniformBelow(3);
    std::vector<uint64_t> xs;
    while (xs.size() < points) {
      uint64_t x = rng.UniformBelow(101);
      if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    std::vector<uint64_t> fs;
    for (size_t k = 0; k < points; ++k) fs.push_back(rng.UniformBelow(11));
    std::sort(fs.begin(), fs.end());
    if (spec.direction == scoring::Direction::kCost) std::reverse(fs.begin(), fs.end());
    for (size_t k = 0; k < points; ++k) {
      Rational f(static_cast<long>(fs[k]), 10);
      f.canonicalize();
      spec.breakpoints.push_back({Rational(static_cast<long>(xs[k])), f});
    }
    rule.attributes.push_back(std::move(spec));
  }
  rule.Validate();
  return rule;
}

scoring::BidValues RandomBid(const scoring::ScoringRule& rule, Rng& rng) {
  scoring::BidValues bid;
  for (const scoring::AttributeSpec& a : rule.attributes) {
    bid.attributes.push_back(RandomGridPoint(a.domain_min(), a.domain_max(), rng));
  }
  bid.price = RandomGridPoint(0, rule.price_ceiling, rng);
  return bid;
}

Run RunBidding(const Config& config, const std::optional<paillier::KeyPair>& key) {
  Rng rng = Rng::FromSeed(config.seed);
  Rng key_rng = rng.Fork();

  ManualClock clock(kSimulationStart, std::chrono::seconds(1));
  Run run{.board = {},
          .auctioneer = {key ? *key
                             : paillier::GenerateKeyPair(config.key_bits, key_rng,
                                                         ModeFor(config.key_bits)),
                         identity::DefaultScheme().Generate(key_rng)},
          .terms = {},
          .bidders = {},
          .values = {},
          .bid_seqs = {},
          .bid_receipts = {},
          .cheated = {}};
  bulletin::BoardHost host(run.board, run.auctioneer.signing, clock);

  run.terms.auction_id = config.auction_id;
  run.terms.item = "simulated procurement lot";
  run.terms.rule = RandomRule(config.attributes, config.t, rng);
  run.terms.deadline = kSimulationStart + std::chrono::hours(24);
  run.terms.paillier_pk = run.auctioneer.paillier.public_key;
  protocol::Announce(host, run.terms);

  for (size_t i = 0; i < config.bidders; ++i) {
    run.bidders.push_back(protocol::MakeBidder(config.auction_id, rng));
    protocol::Register(host, run.bidders.back());
  }
  for (size_t i = 0; i < config.bidders; ++i) {
    scoring::BidValues values = RandomBid(run.terms.rule, rng);
    const bool cheat = rng.UniformBelow(100) < config.cheaters_percent;
    protocol::SubmittedBid submitted;
    if (cheat) {
      protocol::PreparedBid prepared =
          protocol::PrepareBid(run.terms, run.bidders[i].pseudonym, values, rng);
      // Claim a score one step higher than the rule gives.
      BigInt inflated = (prepared.opening.score_claim + 1) % PowerOfTwo(config.t);
      prepared.sealed.score_cipher = paillier::EncryptRandom(run.terms.paillier_pk, {inflated}, rng);
      submitted = protocol::SubmitSealedBid(host, run.bidders[i], prepared.sealed);
    } else {
      submitted = protocol::SubmitBid(host, run.bidders[i], values, rng);
    }
    run.values.push_back(std::move(values));
    run.bid_seqs.push_back(submitted.entry.seq);
    run.bid_receipts.push_back(submitted.receipt);
    run.cheated.push_back(cheat);
  }
  return run;
}

Finished RunAuction(const Config& config, protocol::ExecMode mode,
                    const std::optional<paillier::KeyPair>& key) {
  Finished out{RunBidding(config, key), {}};
  Run& run = out.run;
  ManualClock clock(run.terms.deadline + std::chrono::hours(1), std::chrono::seconds(1));
  bulletin::BoardHost host(run.board, run.auctioneer.signing, clock);
  Rng rng = Rng::FromSeed(config.seed ^ 0x6f70656e);  // independent of the bidding stream
  out.outcome = protocol::OpenAndProve(host, run.auctioneer.paillier.private_key, rng, mode);
  return out;
}

std::optional<size_t> BruteForceWinner(const Run& run) {
  std::optional<size_t> best;
  BigInt best_score;
  for (size_t i = 0; i < run.values.size(); ++i) {
    if (run.cheated[i]) continue;
    BigInt s = scoring::ScoreBid(run.terms.rule, run.values[i]);
    // Strictly greater: earlier bids keep ties.
    if (!best || s > best_score) {
      best = i;
      best_score = s;
    }
  }
  return best;
}

std::string_view PhaseName(Phase p) {
  return p == Phase::kProofPreparation ? "proof_preparation" : "verification";
}

std::vector<BenchRecord> Bench(const std::vector<unsigned>& key_bits,
                               const std::vector<size_t>& num_bids, uint64_t seed,
                               protocol::ExecMode mode, size_t attributes) {
  using Clock = std::chrono::steady_clock;
  std::vector<BenchRecord> records;
  for (unsigned bits : key_bits) {
    Rng key_rng = Rng::FromSeed(seed + bits);
    paillier::KeyPair key = paillier::GenerateKeyPair(bits, key_rng, ModeFor(bits));
    for (size_t bids : num_bids) {
      Config config;
      config.bidders = bids;
      config.attributes = attributes;
      config.key_bits = bits;
      config.seed = seed;
      Run run = RunBidding(config, key);

      ManualClock clock(run.terms.deadline + std::chrono::hours(1), std::chrono::seconds(1));
      bulletin::BoardHost host(run.board, run.auctioneer.signing, clock);
      Rng rng = Rng::FromSeed(seed ^ bids);

      auto start = Clock::now();
      protocol::OpenAndProve(host, key.private_key, rng, mode);
      auto prepared = Clock::now();
      protocol::OutcomeVerdict verdict = protocol::VerifyOutcome(run.board, mode);
      auto verified = Clock::now();
      if (!verdict) throw Error(ErrorCode::kInconsistent, "bench auction failed verification: " + verdict.reason);

      auto ms = [](auto d) { return std::chrono::duration_cast<std::chrono::milliseconds>(d).count(); };
      records.push_back({bits, bids, Phase::kProofPreparation, ms(prepared - start)});
      records.push_back({bits, bids, Phase::kVerification, ms(verified - prepared)});
    }
  }
  return records;
}

void WriteBenchCsv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kBenchCsvHeader << '\n';
  for (const BenchRecord& r : records) {
    out << r.key_bits << ',' << r.num_bids << ',' << PhaseName(r.phase) << ',' << r.elapsed_ms << '\n';
  }
}

}  // namespace sealbid::simulation
