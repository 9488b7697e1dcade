#ifndef SEALBID_SIMULATION_H_
#define SEALBID_SIMULATION_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sealbid/protocol.h"

namespace sealbid::simulation {

struct Config {
  size_t bidders = 10;
  size_t attributes = 2;
  unsigned key_bits = 512;
  unsigned t = 16;
  uint64_t seed = 1;
  std::string auction_id = "sim-auction";
  // Fraction (in percent) of bidders that misstate their encrypted score.
  unsigned cheaters_percent = 0;
};

inline const Timestamp kSimulationStart = ParseRfc3339("2026-01-01T00:00:00Z");

// Random but valid terms: K attributes with 2-4 breakpoints each, weights
// summing to at most 1, price ceiling 1000 on a 1/10 grid.
scoring::ScoringRule RandomRule(size_t attributes, unsigned t, Rng& rng);
scoring::BidValues RandomBid(const scoring::ScoringRule& rule, Rng& rng);

// Everything a simulated auction leaves behind. `auctioneer` is kept so
// callers can reuse its key, and `values` lets tests compute the winner by
// brute force.
struct Run {
  bulletin::Board board;
  protocol::Auctioneer auctioneer;
  protocol::AuctionTerms terms;
  std::vector<protocol::Bidder> bidders;
  std::vector<scoring::BidValues> values;
  std::vector<uint64_t> bid_seqs;
  std::vector<bulletin::Receipt> bid_receipts;
  std::vector<bool> cheated;
};

// Announce, register and bid; stops with the clock at the deadline.
// Uses `key` when given, otherwise generates one from the seed.
Run RunBidding(const Config& config, const std::optional<paillier::KeyPair>& key = std::nullopt);

struct Finished {
  Run run;
  protocol::Outcome outcome;
};

// RunBidding followed by OpenAndProve.
Finished RunAuction(const Config& config, protocol::ExecMode mode = protocol::ExecMode::kParallel,
                    const std::optional<paillier::KeyPair>& key = std::nullopt);

// Brute-force argmax over plaintext bids (index into run.values), skipping
// cheaters; nullopt when nobody is eligible.
std::optional<size_t> BruteForceWinner(const Run& run);

enum class Phase { kProofPreparation, kVerification };
std::string_view PhaseName(Phase p);

struct BenchRecord {
  unsigned key_bits = 0;
  size_t num_bids = 0;
  Phase phase = Phase::kProofPreparation;
  int64_t elapsed_ms = 0;
};

inline constexpr std::string_view kBenchCsvHeader = "key_bits,num_bids,phase,elapsed_ms";

// One simulated auction per (key_bits, num_bids) cell; times OpenAndProve
// and VerifyOutcome on an in-memory board.
std::vector<BenchRecord> Bench(const std::vector<unsigned>& key_bits,
                               const std::vector<size_t>& num_bids, uint64_t seed,
                               protocol::ExecMode mode = protocol::ExecMode::kParallel,
                               size_t attributes = 3);

void WriteBenchCsv(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace sealbid::simulation

#endif  // SEALBID_SIMULATION_H_
