#ifndef SEALBID_PROTOCOL_H_
#define SEALBID_PROTOCOL_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sealbid/bulletin.h"
#include "sealbid/identity.h"
#include "sealbid/paillier.h"
#include "sealbid/rangeproof.h"
#include "sealbid/rng.h"
#include "sealbid/scoring.h"
#include "sealbid/timeutil.h"

namespace sealbid::protocol {

using identity::Pseudonym;
using paillier::Ciphertext;
using paillier::HelpValue;

inline constexpr std::string_view kWinnerRule = "max-score, earliest-seq tie-break";

// Serial loops are the reference; parallel runs the same per-item work
// under OpenMP and must produce identical results.
enum class ExecMode { kSerial, kParallel };

// Sets the OpenMP worker count for kParallel; n <= 0 keeps the default.
void SetThreads(int n);

struct AuctionTerms {
  std::string auction_id;
  std::string item;
  scoring::ScoringRule rule;
  Timestamp deadline;
  paillier::PublicKey paillier_pk{BigInt(15)};
  std::string winner_rule{kWinnerRule};
};

// Terms file / announce payload without key material.
nlohmann::json TermsToJson(const AuctionTerms& terms);
// `pk` replaces whatever key the JSON refers to.
AuctionTerms TermsFromJson(const nlohmann::json& j, const paillier::PublicKey& pk);

// Parses the announcement at seq 0.
AuctionTerms TermsFromBoard(const bulletin::Board& board);

// Rule validity plus the range bound 2^t < n/2.
void ValidateTerms(const AuctionTerms& terms);

struct Auctioneer {
  paillier::KeyPair paillier;
  identity::SigningKeypair signing;
};

struct Bidder {
  identity::SigningKeypair signing;
  identity::Nonce nonce{};
  Pseudonym pseudonym;
};

// Fresh signing key and a pseudonym bound to `auction_id`.
Bidder MakeBidder(std::string_view auction_id, Rng& rng);

// Posts the signed terms as entry 0. Rejects a board that already carries
// an auction and terms that fail validation.
bulletin::Entry Announce(bulletin::BoardHost& host, const AuctionTerms& terms);

// Throws Error(kRejected) for a duplicate pseudonym or a late registration.
bulletin::Receipt Register(bulletin::BoardHost& host, const Bidder& bidder);

struct SealedBid {
  Pseudonym pseudonym;
  // K attribute encryptions followed by the price encryption.
  std::vector<Ciphertext> attribute_ciphers;
  Ciphertext score_cipher;
};

nlohmann::json SealedBidToJson(const SealedBid& bid);
SealedBid SealedBidFromJson(const nlohmann::json& j);

// What only the bidder knows about a sealed bid.
struct BidOpening {
  std::vector<BigInt> attribute_plaintexts;
  std::vector<HelpValue> attribute_helps;
  BigInt score_claim;
  HelpValue score_help;
};

struct PreparedBid {
  SealedBid sealed;
  BidOpening opening;
};

// Bidder side: scores the bid with the published rule and encrypts every
// fixed-point attribute, the price, and the encoded score.
PreparedBid PrepareBid(const AuctionTerms& terms, const Pseudonym& pseudonym,
                       const scoring::BidValues& values, Rng& rng);

struct SubmittedBid {
  PreparedBid prepared;
  bulletin::Entry entry;
  bulletin::Receipt receipt;
};

// Rejects bids at or after the deadline, from unregistered pseudonyms,
// second bids, and bids failing the domain checks.
SubmittedBid SubmitBid(bulletin::BoardHost& host, const Bidder& bidder,
                       const scoring::BidValues& values, Rng& rng);

// Posts an already sealed bid; used when the score claim is computed
// elsewhere (tests of the consistency gate).
SubmittedBid SubmitSealedBid(bulletin::BoardHost& host, const Bidder& bidder, const SealedBid& bid);

struct RangeProofRecord {
  Pseudonym pseudonym;
  uint64_t bid_seq = 0;
  rangeproof::TestSet test_set;
  rangeproof::RangeProof proof;
};

struct ComparisonRecord {
  Pseudonym loser;
  uint64_t loser_bid_seq = 0;
  rangeproof::TestSet test_set;
  rangeproof::GeqProof proof;
};

struct Disqualification {
  uint64_t bid_seq = 0;
  std::string reason;
};

struct Outcome {
  std::optional<Pseudonym> winner;
  uint64_t winner_bid_seq = 0;
  BigInt winner_score;
  HelpValue winner_score_help;
  std::vector<RangeProofRecord> range_proofs;
  std::vector<ComparisonRecord> comparisons;
  std::vector<Disqualification> disqualified;
  uint64_t outcome_seq = 0;
};

// Auctioneer side after the deadline: decrypts every bid, disqualifies
// score claims that disagree with the recomputed score, picks the winner
// and posts one range proof per valid bid, one comparison per loser and
// the outcome. Losers that bid before the winner get a strict comparison,
// which makes the earliest-seq tie-break publicly checkable.
Outcome OpenAndProve(bulletin::BoardHost& host, const paillier::PrivateKey& sk, Rng& rng,
                     ExecMode mode = ExecMode::kParallel);

struct OutcomeVerdict {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

// Public verification from board data alone.
OutcomeVerdict VerifyOutcome(const bulletin::Board& board, ExecMode mode = ExecMode::kParallel);

}  // namespace sealbid::protocol

#endif  // SEALBID_PROTOCOL_H_
