#include "sealbid/protocol.h"

#include <omp.h>

#include <map>
#include <set>

#include "sealbid/canonical_json.h"
#include "sealbid/error.h"
#include "sealbid/kernels.h"

namespace sealbid::protocol {

using bulletin::Board;
using bulletin::BoardHost;
using bulletin::Entry;
using bulletin::Kind;

namespace {

Error Reject(const std::string& msg) { return Error(ErrorCode::kRejected, msg); }

const char* RelationName(kernels::Relation r) {
  switch (r) {
    case kernels::Relation::kRange: return "range";
    case kernels::Relation::kGeq: return "geq";
    case kernels::Relation::kGreater: return "gt";
  }
  return "?";
}

// Registered pseudonyms and the seq of any bid they posted.
struct Participants {
  std::map<std::string, uint64_t> registered;  // pseudonym hex -> register seq
  std::map<std::string, uint64_t> bids;        // pseudonym hex -> bid seq
};

Participants ScanParticipants(const Board& board) {
  Participants p;
  for (const Entry& e : board.entries()) {
    if (e.kind == Kind::kRegister) p.registered.emplace(e.author, e.seq);
    if (e.kind == Kind::kBid) p.bids.emplace(e.author, e.seq);
  }
  return p;
}

bool HasOutcome(const Board& board) {
  for (const Entry& e : board.entries()) {
    if (e.kind == Kind::kOutcome) return true;
  }
  return false;
}

}  // namespace

void SetThreads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

nlohmann::json TermsToJson(const AuctionTerms& terms) {
  return {{"auction_id", terms.auction_id},
          {"item", terms.item},
          {"scoring", scoring::RuleToJson(terms.rule)},
          {"deadline", FormatRfc3339(terms.deadline)},
          {"winner_rule", terms.winner_rule}};
}

AuctionTerms TermsFromJson(const nlohmann::json& j, const paillier::PublicKey& pk) {
  try {
    AuctionTerms terms;
    terms.auction_id = j.at("auction_id").get<std::string>();
    terms.item = j.at("item").get<std::string>();
    terms.rule = scoring::RuleFromJson(j.at("scoring"));
    terms.deadline = ParseRfc3339(j.at("deadline").get<std::string>());
    terms.paillier_pk = pk;
    terms.winner_rule = j.value("winner_rule", std::string(kWinnerRule));
    return terms;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("bad auction terms: ") + e.what());
  }
}

AuctionTerms TermsFromBoard(const Board& board) {
  if (board.size() == 0 || board.at(0).kind != Kind::kAnnounce) {
    throw Error(ErrorCode::kFormat, "board has no announcement");
  }
  const nlohmann::json& p = board.at(0).payload;
  try {
    return TermsFromJson(p, paillier::PublicKeyFromJson(p.at("paillier_pk")));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("bad announcement: ") + e.what());
  }
}

void ValidateTerms(const AuctionTerms& terms) {
  if (terms.auction_id.empty()) throw Reject("auction id must not be empty");
  if (terms.winner_rule != kWinnerRule) throw Reject("unsupported winner rule");
  try {
    terms.rule.Validate();
    rangeproof::CheckRangeBits(terms.paillier_pk, terms.rule.t);
  } catch (const Error& e) {
    throw Reject(std::string("invalid terms: ") + e.what());
  }
}

Bidder MakeBidder(std::string_view auction_id, Rng& rng) {
  Bidder b;
  b.signing = identity::DefaultScheme().Generate(rng);
  b.nonce = identity::FreshNonce(rng);
  b.pseudonym = identity::GeneratePseudonym(b.signing.public_key, b.nonce, auction_id);
  return b;
}

Entry Announce(BoardHost& host, const AuctionTerms& terms) {
  if (host.board().size() != 0) {
    throw Reject("board already carries auction '" + TermsFromBoard(host.board()).auction_id + "'");
  }
  ValidateTerms(terms);
  nlohmann::json payload = TermsToJson(terms);
  payload["paillier_pk"] = paillier::PublicKeyToJson(terms.paillier_pk);
  payload["auctioneer_vk"] = BytesToHex(host.auctioneer_key().public_key);
  payload["auctioneer_scheme"] = host.auctioneer_key().scheme_id;
  return host.PostAsAuctioneer(Kind::kAnnounce, payload).entry;
}

bulletin::Receipt Register(BoardHost& host, const Bidder& bidder) {
  AuctionTerms terms = TermsFromBoard(host.board());
  Participants p = ScanParticipants(host.board());
  const std::string who = bidder.pseudonym.hex();
  if (p.registered.contains(who)) throw Reject("pseudonym already registered");

  nlohmann::json payload = {{"pseudonym", who},
                            {"vk", BytesToHex(bidder.signing.public_key)},
                            {"scheme", bidder.signing.scheme_id}};
  Entry e = host.Prepare(Kind::kRegister, payload, who, bidder.signing);
  if (ParseRfc3339(e.timestamp) >= terms.deadline) throw Reject("registration after the deadline");
  return *host.Commit(std::move(e)).receipt;
}

nlohmann::json SealedBidToJson(const SealedBid& bid) {
  nlohmann::json ciphers = nlohmann::json::array();
  for (const Ciphertext& c : bid.attribute_ciphers) ciphers.push_back(ToHex(c.value));
  return {{"pseudonym", bid.pseudonym.hex()},
          {"attribute_ciphers", ciphers},
          {"score_cipher", ToHex(bid.score_cipher.value)}};
}

SealedBid SealedBidFromJson(const nlohmann::json& j) {
  try {
    SealedBid bid;
    bid.pseudonym = Pseudonym::FromHex(j.at("pseudonym").get<std::string>());
    for (const auto& c : j.at("attribute_ciphers")) {
      bid.attribute_ciphers.push_back({FromHex(c.get<std::string>())});
    }
    bid.score_cipher = {FromHex(j.at("score_cipher").get<std::string>())};
    return bid;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("bad sealed bid: ") + e.what());
  }
}

PreparedBid PrepareBid(const AuctionTerms& terms, const Pseudonym& pseudonym,
                       const scoring::BidValues& values, Rng& rng) {
  const scoring::ScoringRule& rule = terms.rule;
  const paillier::PublicKey& pk = terms.paillier_pk;
  try {
    scoring::CheckBid(rule, values);
  } catch (const Error& e) {
    throw Reject(std::string("malformed bid: ") + e.what());
  }
  PreparedBid out;
  out.sealed.pseudonym = pseudonym;
  auto seal = [&](const scoring::Rational& x) {
    BigInt m = scoring::EncodeFixedPoint(x, rule.value_scale, rule.t);
    HelpValue r;
    out.sealed.attribute_ciphers.push_back(paillier::EncryptRandom(pk, {m}, rng, &r));
    out.opening.attribute_plaintexts.push_back(std::move(m));
    out.opening.attribute_helps.push_back(std::move(r));
  };
  for (const scoring::Rational& x : values.attributes) seal(x);
  seal(values.price);
  out.opening.score_claim = scoring::ScoreBid(rule, values);
  out.sealed.score_cipher =
      paillier::EncryptRandom(pk, {out.opening.score_claim}, rng, &out.opening.score_help);
  return out;
}

SubmittedBid SubmitSealedBid(BoardHost& host, const Bidder& bidder, const SealedBid& bid) {
  AuctionTerms terms = TermsFromBoard(host.board());
  Participants p = ScanParticipants(host.board());
  const std::string who = bidder.pseudonym.hex();
  if (!p.registered.contains(who)) throw Reject("pseudonym is not registered");
  if (p.bids.contains(who)) throw Reject("pseudonym already placed a bid");
  if (bid.pseudonym != bidder.pseudonym) throw Reject("sealed bid names another pseudonym");
  if (bid.attribute_ciphers.size() != terms.rule.attributes.size() + 1) {
    throw Reject("sealed bid must carry K + 1 attribute ciphers");
  }
  try {
    for (const Ciphertext& c : bid.attribute_ciphers) paillier::ValidateCiphertext(terms.paillier_pk, c);
    paillier::ValidateCiphertext(terms.paillier_pk, bid.score_cipher);
  } catch (const Error& e) {
    throw Reject(std::string("malformed bid: ") + e.what());
  }

  Entry e = host.Prepare(Kind::kBid, SealedBidToJson(bid), who, bidder.signing);
  if (ParseRfc3339(e.timestamp) >= terms.deadline) throw Reject("bid at or after the deadline");
  BoardHost::Appended appended = host.Commit(std::move(e));
  return SubmittedBid{PreparedBid{bid, {}}, std::move(appended.entry), std::move(*appended.receipt)};
}

SubmittedBid SubmitBid(BoardHost& host, const Bidder& bidder, const scoring::BidValues& values,
                       Rng& rng) {
  AuctionTerms terms = TermsFromBoard(host.board());
  PreparedBid prepared = PrepareBid(terms, bidder.pseudonym, values, rng);
  SubmittedBid out = SubmitSealedBid(host, bidder, prepared.sealed);
  out.prepared = std::move(prepared);
  return out;
}

Outcome OpenAndProve(BoardHost& host, const paillier::PrivateKey& sk, Rng& rng, ExecMode mode) {
  const Board& board = host.board();
  AuctionTerms terms = TermsFromBoard(board);
  const paillier::PublicKey& pk = terms.paillier_pk;
  if (sk.public_key() != pk) throw Reject("private key does not match the announced key");
  if (host.clock().Now() < terms.deadline) throw Reject("bidding is still open");
  if (HasOutcome(board)) throw Reject("outcome already published");

  // Bids in board order. Seqs, not entry pointers: posting proofs grows the board.
  std::vector<uint64_t> bid_seqs;
  std::vector<SealedBid> sealed;
  std::vector<kernels::OpenTask> open_tasks;
  for (const Entry& e : board.entries()) {
    if (e.kind != Kind::kBid) continue;
    bid_seqs.push_back(e.seq);
    sealed.push_back(SealedBidFromJson(e.payload));
    open_tasks.push_back({sealed.back().attribute_ciphers, sealed.back().score_cipher});
  }

  std::vector<kernels::OpenResult> opened =
      mode == ExecMode::kSerial ? kernels::OpenBidsSerial(sk, terms.rule, open_tasks)
                                : kernels::OpenBidsParallel(sk, terms.rule, open_tasks);

  Outcome outcome;
  std::vector<size_t> valid;
  std::vector<scoring::ScoredBid> scored;
  for (size_t i = 0; i < opened.size(); ++i) {
    if (opened[i].valid) {
      valid.push_back(i);
      scored.push_back({sealed[i].pseudonym, opened[i].score, bid_seqs[i]});
    } else {
      outcome.disqualified.push_back({bid_seqs[i], opened[i].reason});
    }
  }

  std::vector<kernels::ProofTask> tasks;
  std::vector<size_t> task_bid;  // index into bid_seqs
  std::optional<size_t> winner;
  if (!scored.empty()) {
    winner = valid[scoring::DetermineWinnerIndex(scored)];
    for (size_t i : valid) {
      kernels::ProofTask task;
      task.relation = kernels::Relation::kRange;
      task.subject = sealed[i].score_cipher;
      task.value = opened[i].score;
      task.help = opened[i].score_help;
      tasks.push_back(std::move(task));
      task_bid.push_back(i);
    }
    const size_t w = *winner;
    for (size_t i : valid) {
      if (i == w) continue;
      kernels::ProofTask task;
      task.relation =
          bid_seqs[i] < bid_seqs[w] ? kernels::Relation::kGreater : kernels::Relation::kGeq;
      task.subject = sealed[w].score_cipher;
      task.value = opened[w].score;
      task.help = opened[w].score_help;
      task.other = sealed[i].score_cipher;
      task.other_value = opened[i].score;
      task.other_help = opened[i].score_help;
      tasks.push_back(std::move(task));
      task_bid.push_back(i);
    }
  }

  // Children are forked in task order, so output is independent of scheduling.
  std::vector<Rng> rngs;
  rngs.reserve(tasks.size());
  for (size_t i = 0; i < tasks.size(); ++i) rngs.push_back(rng.Fork());
  std::vector<kernels::ProofResult> proofs =
      mode == ExecMode::kSerial ? kernels::ProveSerial(pk, terms.rule.t, tasks, rngs)
                                : kernels::ProveParallel(pk, terms.rule.t, tasks, rngs);

  Board::Batch batch(host.board());
  nlohmann::json range_refs = nlohmann::json::array();
  nlohmann::json comparison_refs = nlohmann::json::array();
  for (size_t k = 0; k < tasks.size(); ++k) {
    const kernels::ProofTask& task = tasks[k];
    kernels::ProofResult& result = proofs[k];
    const size_t i = task_bid[k];
    const uint64_t bid_seq = bid_seqs[i];

    nlohmann::json subject = {{"relation", RelationName(task.relation)}};
    if (task.relation == kernels::Relation::kRange) {
      subject["bid_seq"] = bid_seq;
    } else {
      subject["minuend_seq"] = bid_seqs[*winner];
      subject["subtrahend_seq"] = bid_seq;
    }

    nlohmann::json ts_payload = rangeproof::TestSetToJson(result.test_set);
    ts_payload.update(subject);
    const uint64_t ts_seq = host.PostAsAuctioneer(Kind::kTestSet, ts_payload).entry.seq;

    rangeproof::RangeProof& rp = task.relation == kernels::Relation::kRange
                                     ? result.range
                                     : result.comparison.difference_proof;
    rp.testset_id = std::to_string(ts_seq);
    nlohmann::json proof_payload = rangeproof::RangeProofToJson(rp);
    proof_payload.update(subject);
    const uint64_t proof_seq = host.PostAsAuctioneer(Kind::kProof, proof_payload).entry.seq;

    if (task.relation == kernels::Relation::kRange) {
      range_refs.push_back({{"bid_seq", bid_seq}, {"proof_seq", proof_seq}});
      outcome.range_proofs.push_back(
          {sealed[i].pseudonym, bid_seq, std::move(result.test_set), std::move(result.range)});
    } else {
      const bool strict = task.relation == kernels::Relation::kGreater;
      comparison_refs.push_back(
          {{"loser_bid_seq", bid_seq}, {"proof_seq", proof_seq}, {"strict", strict}});
      outcome.comparisons.push_back(
          {sealed[i].pseudonym, bid_seq, std::move(result.test_set), std::move(result.comparison)});
    }
  }

  nlohmann::json disq = nlohmann::json::array();
  for (const Disqualification& d : outcome.disqualified) {
    disq.push_back({{"bid_seq", d.bid_seq}, {"reason", d.reason}});
  }
  nlohmann::json payload = {{"range_proofs", range_refs},
                            {"comparison_proofs", comparison_refs},
                            {"disqualified", disq}};
  if (winner) {
    const size_t w = *winner;
    outcome.winner = sealed[w].pseudonym;
    outcome.winner_bid_seq = bid_seqs[w];
    outcome.winner_score = opened[w].score;
    outcome.winner_score_help = opened[w].score_help;
    payload["winner"] = outcome.winner->hex();
    payload["winner_bid_seq"] = outcome.winner_bid_seq;
    payload["winner_score"] = ToHex(outcome.winner_score);
    payload["winner_score_help"] = ToHex(outcome.winner_score_help.r);
  } else {
    payload["winner"] = nullptr;
  }
  outcome.outcome_seq = host.PostAsAuctioneer(Kind::kOutcome, payload).entry.seq;
  batch.Commit();
  return outcome;
}

namespace {

struct PostedBid {
  uint64_t seq = 0;
  std::string author;
  SealedBid sealed;
};

class OutcomeChecker {
 public:
  OutcomeChecker(const Board& board, ExecMode mode) : board_(board), mode_(mode) {}

  OutcomeVerdict Run();

 private:
  // Each check returns an empty string when it passes.
  std::string CheckBids();
  std::string CheckAppeals();
  std::string CheckOutcome();
  std::string ResolveProof(uint64_t proof_seq, const nlohmann::json& expected_subject,
                           kernels::VerifyTask& task);

  const Board& board_;
  ExecMode mode_;
  std::optional<AuctionTerms> terms_;
  std::map<uint64_t, PostedBid> bids_;
  const Entry* outcome_ = nullptr;
  std::vector<kernels::VerifyTask> tasks_;
  std::vector<std::string> task_labels_;
};

OutcomeVerdict OutcomeChecker::Run() {
  bulletin::ChainVerdict chain = bulletin::VerifyChain(board_);
  if (!chain) {
    return {false, "chain integrity failed at entry " + std::to_string(chain.bad_index.value_or(0)) +
                       ": " + chain.reason};
  }
  try {
    terms_ = TermsFromBoard(board_);
    ValidateTerms(*terms_);
  } catch (const Error& e) {
    return {false, std::string("announcement invalid: ") + e.what()};
  }
  for (auto check : {&OutcomeChecker::CheckBids, &OutcomeChecker::CheckAppeals,
                     &OutcomeChecker::CheckOutcome}) {
    std::string why;
    try {
      why = (this->*check)();
    } catch (const std::exception& e) {
      why = std::string("malformed board data: ") + e.what();
    }
    if (!why.empty()) return {false, why};
  }

  std::vector<rangeproof::Verdict> verdicts = mode_ == ExecMode::kSerial
                                                  ? kernels::VerifySerial(terms_->paillier_pk, tasks_)
                                                  : kernels::VerifyParallel(terms_->paillier_pk, tasks_);
  for (size_t i = 0; i < verdicts.size(); ++i) {
    if (!verdicts[i]) return {false, task_labels_[i] + ": " + verdicts[i].reason};
  }
  return {};
}

std::string OutcomeChecker::CheckBids() {
  std::set<std::string> registered;
  std::set<std::string> bidders;
  for (const Entry& e : board_.entries()) {
    if (e.kind == Kind::kRegister) {
      if (ParseRfc3339(e.timestamp) >= terms_->deadline) {
        return "registration at seq " + std::to_string(e.seq) + " is after the deadline";
      }
      registered.insert(e.author);
    }
    if (e.kind != Kind::kBid) continue;
    const std::string at = " at seq " + std::to_string(e.seq);
    if (!registered.contains(e.author)) return "bid" + at + " from an unregistered pseudonym";
    if (!bidders.insert(e.author).second) return "second bid" + at + " from one pseudonym";
    if (ParseRfc3339(e.timestamp) >= terms_->deadline) return "bid" + at + " is after the deadline";
    PostedBid bid{e.seq, e.author, SealedBidFromJson(e.payload)};
    if (bid.sealed.pseudonym.hex() != e.author) return "bid" + at + " names another pseudonym";
    if (bid.sealed.attribute_ciphers.size() != terms_->rule.attributes.size() + 1) {
      return "bid" + at + " has the wrong number of attribute ciphers";
    }
    bids_.emplace(e.seq, std::move(bid));
  }
  return {};
}

std::string OutcomeChecker::CheckAppeals() {
  for (const Entry& e : board_.entries()) {
    if (e.kind != Kind::kAppeal) continue;
    bulletin::Receipt receipt = bulletin::ReceiptFromJson(e.payload.at("receipt"));
    if (bulletin::VerifyReceipt(board_, receipt) &&
        !bulletin::FindEntryByHash(board_, receipt.entry_hash)) {
      return "upheld appeal at seq " + std::to_string(e.seq) + ": receipted entry " +
             std::to_string(receipt.entry_seq) + " missing from the board";
    }
  }
  return {};
}

std::string OutcomeChecker::ResolveProof(uint64_t proof_seq, const nlohmann::json& expected_subject,
                                         kernels::VerifyTask& task) {
  const std::string at = " (proof seq " + std::to_string(proof_seq) + ")";
  if (proof_seq >= board_.size() || board_.at(proof_seq).kind != Kind::kProof) {
    return "referenced proof entry missing" + at;
  }
  const nlohmann::json& pp = board_.at(proof_seq).payload;
  for (const auto& [key, value] : expected_subject.items()) {
    if (!pp.contains(key) || pp.at(key) != value) return "proof subject does not match" + at;
  }
  rangeproof::RangeProof proof = rangeproof::RangeProofFromJson(pp);
  const std::string& id = proof.testset_id;
  if (id.empty() || id.size() > 19 || id.find_first_not_of("0123456789") != std::string::npos) {
    return "malformed test set id" + at;
  }
  const uint64_t ts_seq = std::stoull(id);
  if (ts_seq >= proof_seq || board_.at(ts_seq).kind != Kind::kTestSet) {
    return "referenced test set missing" + at;
  }
  const nlohmann::json& tp = board_.at(ts_seq).payload;
  for (const auto& [key, value] : expected_subject.items()) {
    if (!tp.contains(key) || tp.at(key) != value) return "test set subject does not match" + at;
  }
  task.test_set = rangeproof::TestSetFromJson(tp);
  if (task.test_set.t != terms_->rule.t) return "test set uses a different bit bound" + at;
  if (task.relation == kernels::Relation::kRange) {
    task.range = std::move(proof);
  } else {
    task.comparison.minuend = task.subject;
    task.comparison.subtrahend = task.other;
    task.comparison.strict = task.relation == kernels::Relation::kGreater;
    task.comparison.difference_proof = std::move(proof);
  }
  return {};
}

std::string OutcomeChecker::CheckOutcome() {
  for (const Entry& e : board_.entries()) {
    if (e.kind != Kind::kOutcome) continue;
    if (outcome_ != nullptr) return "more than one outcome entry";
    outcome_ = &e;
  }
  if (outcome_ == nullptr) return "no outcome published";
  if (ParseRfc3339(outcome_->timestamp) < terms_->deadline) return "outcome posted before the deadline";
  for (uint64_t s = outcome_->seq + 1; s < board_.size(); ++s) {
    if (board_.at(s).kind != Kind::kAppeal) return "entries other than appeals follow the outcome";
  }

  const nlohmann::json& p = outcome_->payload;
  const paillier::PublicKey& pk = terms_->paillier_pk;

  std::set<uint64_t> disqualified;
  for (const auto& d : p.at("disqualified")) {
    uint64_t seq = d.at("bid_seq").get<uint64_t>();
    if (!bids_.contains(seq)) return "disqualification names a non-bid entry";
    if (!disqualified.insert(seq).second) return "bid disqualified twice";
  }
  std::set<uint64_t> valid;
  for (const auto& [seq, bid] : bids_) {
    if (!disqualified.contains(seq)) valid.insert(seq);
  }

  if (p.at("winner").is_null()) {
    if (!valid.empty()) return "no winner declared although valid bids exist";
    if (!p.at("range_proofs").empty() || !p.at("comparison_proofs").empty()) {
      return "proofs published without a winner";
    }
    return {};
  }

  const uint64_t winner_seq = p.at("winner_bid_seq").get<uint64_t>();
  if (!valid.contains(winner_seq)) return "winner is not a valid bid";
  const PostedBid& winner = bids_.at(winner_seq);
  if (p.at("winner").get<std::string>() != winner.author) return "winner pseudonym does not match its bid";

  const BigInt score = FromHex(p.at("winner_score").get<std::string>());
  const paillier::HelpValue help{FromHex(p.at("winner_score_help").get<std::string>())};
  if (score >= PowerOfTwo(terms_->rule.t)) return "winner score exceeds 2^t";
  try {
    if (paillier::Encrypt(pk, {score}, help) != winner.sealed.score_cipher) {
      return "winner score re-encryption does not match the posted score cipher";
    }
  } catch (const Error&) {
    return "winner score or help value is not encryptable";
  }

  std::set<uint64_t> ranged;
  for (const auto& ref : p.at("range_proofs")) {
    const uint64_t bid_seq = ref.at("bid_seq").get<uint64_t>();
    if (!valid.contains(bid_seq)) return "range proof for a bid that is not valid";
    if (!ranged.insert(bid_seq).second) return "two range proofs for one bid";
    kernels::VerifyTask task;
    task.relation = kernels::Relation::kRange;
    task.subject = bids_.at(bid_seq).sealed.score_cipher;
    nlohmann::json subject = {{"relation", "range"}, {"bid_seq", bid_seq}};
    if (auto why = ResolveProof(ref.at("proof_seq").get<uint64_t>(), subject, task); !why.empty()) {
      return why;
    }
    tasks_.push_back(std::move(task));
    task_labels_.push_back("range proof for bid " + std::to_string(bid_seq));
  }
  if (ranged != valid) return "range proofs do not cover every valid bid";

  std::set<uint64_t> compared;
  for (const auto& ref : p.at("comparison_proofs")) {
    const uint64_t loser = ref.at("loser_bid_seq").get<uint64_t>();
    if (loser == winner_seq || !valid.contains(loser)) return "comparison for a bid that is not a valid loser";
    if (!compared.insert(loser).second) return "two comparisons for one loser";
    const bool strict = ref.at("strict").get<bool>();
    // Earlier bids only lose on a strictly lower score.
    if (strict != (loser < winner_seq)) return "comparison strictness contradicts the tie-break rule";
    kernels::VerifyTask task;
    task.relation = strict ? kernels::Relation::kGreater : kernels::Relation::kGeq;
    task.subject = winner.sealed.score_cipher;
    task.other = bids_.at(loser).sealed.score_cipher;
    nlohmann::json subject = {{"relation", strict ? "gt" : "geq"},
                              {"minuend_seq", winner_seq},
                              {"subtrahend_seq", loser}};
    if (auto why = ResolveProof(ref.at("proof_seq").get<uint64_t>(), subject, task); !why.empty()) {
      return why;
    }
    tasks_.push_back(std::move(task));
    task_labels_.push_back("comparison against bid " + std::to_string(loser));
  }
  if (compared.size() + 1 != valid.size()) return "comparison proofs do not cover every loser";
  return {};
}

}  // namespace

OutcomeVerdict VerifyOutcome(const Board& board, ExecMode mode) {
  return OutcomeChecker(board, mode).Run();
}

}  // namespace sealbid::protocol
