// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sealbid/bulletin.h"
#include "sealbid/error.h"
#include "sealbid/paillier.h"
#include "sealbid/protocol.h"
#include "sealbid/rangeproof.h"
#include "sealbid/simulation.h"

namespace {

using namespace sealbid;
using bulletin::Board;
using bulletin::Entry;
using bulletin::Kind;
using paillier::Ciphertext;
using paillier::Decrypt;
using paillier::Encrypt;
using paillier::HelpValue;
using paillier::PublicKey;
using rangeproof::BuiltTestSet;
using rangeproof::RangeProof;

struct Result {
  bool ok = true;
  std::string detail;
};

Result Fail(std::string why) { return {false, std::move(why)}; }

const paillier::KeyPair& Key512() {
  static const paillier::KeyPair key = [] {
    Rng rng = Rng::FromSeed(0x51a);
    return paillier::GenerateKeyPair(512, rng);
  }();
  return key;
}

// Corpus shared by criteria 4 and 6.
struct ProvedValue {
  BigInt x;
  unsigned t;
  size_t handover;
};
std::vector<ProvedValue> g_range_corpus;

Result PaillierCorrectness() {
  paillier::PrivateKey tiny(5, 7);
  size_t exhaustive = 0;
  for (int m = 0; m < 35; ++m) {
    for (int r = 1; r < 35; ++r) {
      if (Gcd(r, 35) != 1) continue;
      if (Decrypt(tiny, Encrypt(tiny.public_key(), {m}, {r})).value != m) {
        return Fail("n=35 roundtrip fails at m=" + std::to_string(m) + " r=" + std::to_string(r));
      }
      ++exhaustive;
    }
  }
  Rng rng = Rng::FromSeed(1);
  const PublicKey& pk = Key512().public_key;
  for (int i = 0; i < 1000; ++i) {
    BigInt m = rng.BelowBig(pk.n());
    if (Decrypt(Key512().private_key, paillier::EncryptRandom(pk, {m}, rng)).value != m) {
      return Fail("512-bit roundtrip " + std::to_string(i) + " fails");
    }
  }
  return {true, std::to_string(exhaustive) + " exhaustive pairs at n=35, 1000 at 512 bits"};
}

Result Homomorphisms() {
  Rng rng = Rng::FromSeed(2);
  const PublicKey& pk = Key512().public_key;
  const paillier::PrivateKey& sk = Key512().private_key;
  const BigInt& n = pk.n();
  for (int i = 0; i < 1000; ++i) {
    BigInt a = rng.BelowBig(n), b = rng.BelowBig(n), k = rng.BelowBig(n);
    Ciphertext ca = paillier::EncryptRandom(pk, {a}, rng);
    Ciphertext cb = paillier::EncryptRandom(pk, {b}, rng);
    const std::string at = " at pair " + std::to_string(i);
    if (Decrypt(sk, paillier::HomAdd(pk, ca, cb)).value != (a + b) % n) return Fail("add" + at);
    if (Decrypt(sk, paillier::HomScalarMul(pk, ca, k)).value != a * k % n) return Fail("scalar" + at);
    if (Decrypt(sk, paillier::HomAddConst(pk, ca, b)).value != (a + b) % n) return Fail("add-const" + at);
    if (Decrypt(sk, paillier::Invert(pk, ca)).value != (n - a) % n) return Fail("invert" + at);
    if (paillier::HomAdd(pk, ca, paillier::Invert(pk, ca)).value != 1) return Fail("c * c^-1" + at);
  }
  return {true, "1000 pairs at 512 bits, 5 identities each"};
}

Result RandomnessRecovery() {
  Rng rng = Rng::FromSeed(3);
  const PublicKey& pk = Key512().public_key;
  for (int i = 0; i < 500; ++i) {
    paillier::Plaintext m{rng.BelowBig(pk.n())};
    HelpValue r{rng.UnitModulo(pk.n())};
    if (paillier::RecoverRandomness(Key512().private_key, Encrypt(pk, m, r), m) != r) {
      return Fail("trial " + std::to_string(i) + " recovered a different r");
    }
  }
  return {true, "500 trials at 512 bits"};
}

Result ProveAndCheck(const PublicKey& pk, const BigInt& x, unsigned t, Rng& rng) {
  HelpValue r{rng.UnitModulo(pk.n())};
  Ciphertext c = Encrypt(pk, {x}, r);
  BuiltTestSet built = rangeproof::BuildTestSet(pk, c, t, rng);
  RangeProof proof = rangeproof::ProveRange(pk, c, {x}, r, built, rng);
  rangeproof::Verdict v = rangeproof::VerifyRange(pk, c, built.set, proof);
  g_range_corpus.push_back({x, t, proof.indices.size()});
  if (!v) return Fail("x=" + x.get_str() + " t=" + std::to_string(t) + ": " + v.reason);
  return {};
}

Result RangeCompleteness() {
  Rng rng = Rng::FromSeed(4);
  paillier::PrivateKey small(1009, 1013);
  for (int x = 0; x < 64; ++x) {
    if (Result r = ProveAndCheck(small.public_key(), x, 6, rng); !r.ok) return r;
  }
  for (int i = 0; i < 200; ++i) {
    // Include both ends of the range.
    BigInt x = i == 0 ? BigInt(0) : i == 1 ? PowerOfTwo(16) - 1 : rng.BelowBig(PowerOfTwo(16));
    if (Result r = ProveAndCheck(Key512().public_key, x, 16, rng); !r.ok) return r;
  }
  return {true, "64 exhaustive at t=6 (n=1022117), 200 random at t=16 / 512 bits"};
}

Result ForgeryResistance() {
  Rng rng = Rng::FromSeed(5);
  const PublicKey& pk = Key512().public_key;
  const unsigned t = 16;
  std::map<std::string, int> attempts;
  int accepted = 0;
  int total = 0;
  while (total < 10000) {
    // One honest proof per 50 forgeries keeps the run short.
    BigInt x = rng.BelowBig(PowerOfTwo(t));
    HelpValue r{rng.UnitModulo(pk.n())};
    Ciphertext c = Encrypt(pk, {x}, r);
    BuiltTestSet built = rangeproof::BuildTestSet(pk, c, t, rng);
    RangeProof honest = rangeproof::ProveRange(pk, c, {x}, r, built, rng);
    // An out-of-range cipher under the same test set shape.
    Ciphertext big = paillier::EncryptRandom(pk, {PowerOfTwo(t) + rng.BelowBig(PowerOfTwo(t))}, rng);
    BuiltTestSet big_set = rangeproof::BuildTestSet(pk, big, t, rng);

    for (int k = 0; k < 50 && total < 10000; ++k, ++total) {
      RangeProof forged = honest;
      const Ciphertext* cipher = &c;
      const rangeproof::TestSet* set = &built.set;
      std::string kind;
      switch (k % 4) {
        case 0: {  // a different random t-subset, honest s
          kind = "wrong subset";
          std::vector<size_t> all(2 * t);
          for (size_t i = 0; i < all.size(); ++i) all[i] = i;
          do {
            for (size_t i = 0; i < t; ++i) std::swap(all[i], all[i + rng.UniformBelow(all.size() - i)]);
            forged.indices.assign(all.begin(), all.begin() + t);
            std::sort(forged.indices.begin(), forged.indices.end());
          } while (forged.indices == honest.indices);
          break;
        }
        case 1:  // honest subset, tampered s
          kind = "tampered s";
          do {
            forged.s.r = forged.s.r * rng.UnitModulo(pk.n()) % pk.n();
          } while (forged.s == honest.s);
          break;
        case 2: {  // one index swapped for a withheld one
          kind = "wrong index";
          std::vector<size_t> withheld;
          for (size_t i = 0; i < 2 * t; ++i) {
            if (!std::binary_search(honest.indices.begin(), honest.indices.end(), i)) withheld.push_back(i);
          }
          forged.indices[rng.UniformBelow(t)] = withheld[rng.UniformBelow(withheld.size())];
          std::sort(forged.indices.begin(), forged.indices.end());
          break;
        }
        default: {  // guessed handover for a value >= 2^t
          kind = "out-of-range guess";
          cipher = &big;
          set = &big_set.set;
          forged.indices.clear();
          std::vector<size_t> all(2 * t);
          for (size_t i = 0; i < all.size(); ++i) all[i] = i;
          for (size_t i = 0; i < t; ++i) std::swap(all[i], all[i + rng.UniformBelow(all.size() - i)]);
          forged.indices.assign(all.begin(), all.begin() + t);
          std::sort(forged.indices.begin(), forged.indices.end());
          forged.s = {rng.UnitModulo(pk.n())};
          break;
        }
      }
      ++attempts[kind];
      if (rangeproof::VerifyRange(pk, *cipher, *set, forged)) ++accepted;
    }
  }
  std::string detail;
  for (const auto& [kind, count] : attempts) detail += kind + " " + std::to_string(count) + ", ";
  detail += std::to_string(accepted) + " accepted";
  return {accepted == 0, detail};
}

Result HidingStructure() {
  if (g_range_corpus.empty()) return Fail("criterion 4 corpus is empty");
  std::map<int, int> by_popcount;
  for (const ProvedValue& p : g_range_corpus) {
    if (p.handover != p.t) {
      return Fail("x=" + p.x.get_str() + " handed over " + std::to_string(p.handover) + " of t=" +
                  std::to_string(p.t));
    }
    ++by_popcount[static_cast<int>(mpz_popcount(p.x.get_mpz_t()))];
  }
  return {true, std::to_string(g_range_corpus.size()) + " proofs, popcounts " +
                    std::to_string(by_popcount.begin()->first) + ".." +
                    std::to_string(by_popcount.rbegin()->first) + ", handover always t"};
}

simulation::Config SmallAuction(uint64_t seed, size_t bidders, size_t attributes) {
  simulation::Config config;
  config.seed = seed;
  config.bidders = bidders;
  config.attributes = attributes;
  config.key_bits = 256;
  config.auction_id = "acceptance-" + std::to_string(seed);
  return config;
}

Result WinnerCorrectness() {
  Rng pick = Rng::FromSeed(7);
  size_t disqualified = 0;
  for (uint64_t i = 0; i < 200; ++i) {
    simulation::Config config = SmallAuction(1000 + i, 3 + pick.UniformBelow(18), i % 4);
    config.cheaters_percent = i % 5 == 0 ? 20 : 0;
    simulation::Finished done = simulation::RunAuction(config);
    std::optional<size_t> oracle = simulation::BruteForceWinner(done.run);
    const std::string at = "auction " + std::to_string(i) + ": ";
    if (oracle.has_value() != done.outcome.winner.has_value()) return Fail(at + "winner presence differs");
    if (oracle && *done.outcome.winner != done.run.bidders[*oracle].pseudonym) {
      return Fail(at + "protocol winner differs from brute force");
    }
    protocol::OutcomeVerdict v = protocol::VerifyOutcome(done.run.board);
    if (!v) return Fail(at + "verify_outcome invalid: " + v.reason);
    disqualified += done.outcome.disqualified.size();
  }
  return {true, "200 auctions, K in 0..3, 3-20 bidders, " + std::to_string(disqualified) +
                    " misstated bids disqualified"};
}

// Re-signs and re-chains from `from` on with every key an all-powerful
// auctioneer could hold.
void Rechain(Board& board, size_t from, const simulation::Run& run) {
  std::map<std::string, identity::SigningKeypair> keys{{"auctioneer", run.auctioneer.signing}};
  for (const protocol::Bidder& b : run.bidders) keys[b.pseudonym.hex()] = b.signing;
  auto& es = board.mutable_entries_for_testing();
  for (size_t i = from; i < es.size(); ++i) {
    es[i].seq = i;
    es[i].prev_hash = i == 0 ? Digest{} : bulletin::EntryHash(es[i - 1]);
    es[i].signature = identity::SignEntry(keys.at(es[i].author), bulletin::SignedBytes(es[i]));
  }
}

std::vector<size_t> IndicesOf(const Board& board, Kind kind) {
  std::vector<size_t> out;
  for (const Entry& e : board.entries()) {
    if (e.kind == kind) out.push_back(e.seq);
  }
  return out;
}

std::string BumpHex(const nlohmann::json& v) { return ToHex(FromHex(v.get<std::string>()) + 1); }

Result TamperDetection() {
  struct Mutation {
    std::string name;
    bool also_resigned;
    std::function<void(Board&, Rng&)> apply;
  };
  const std::vector<Mutation> mutations = {
      {"winner score", true,
       [](Board& b, Rng&) {
         auto& p = b.mutable_entries_for_testing()[IndicesOf(b, Kind::kOutcome)[0]].payload;
         p["winner_score"] = BumpHex(p["winner_score"]);
       }},
      {"help value", true,
       [](Board& b, Rng&) {
         auto& p = b.mutable_entries_for_testing()[IndicesOf(b, Kind::kOutcome)[0]].payload;
         p["winner_score_help"] = BumpHex(p["winner_score_help"]);
       }},
      {"handover index", true,
       [](Board& b, Rng& rng) {
         std::vector<size_t> proofs = IndicesOf(b, Kind::kProof);
         auto& p = b.mutable_entries_for_testing()[proofs[rng.UniformBelow(proofs.size())]].payload;
         std::vector<size_t> idx = p["indices"].get<std::vector<size_t>>();
         const size_t size = 2 * idx.size();
         size_t replacement;
         do {
           replacement = rng.UniformBelow(size);
         } while (std::find(idx.begin(), idx.end(), replacement) != idx.end());
         idx[rng.UniformBelow(idx.size())] = replacement;
         std::sort(idx.begin(), idx.end());
         p["indices"] = idx;
       }},
      {"signature", false,
       [](Board& b, Rng& rng) {
         auto& e = b.mutable_entries_for_testing()[rng.UniformBelow(b.size())];
         e.signature[rng.UniformBelow(e.signature.size())] ^= static_cast<uint8_t>(1u << rng.UniformBelow(8));
       }},
      {"deleted proof", true,
       [](Board& b, Rng& rng) {
         std::vector<size_t> proofs = IndicesOf(b, Kind::kProof);
         auto& es = b.mutable_entries_for_testing();
         es.erase(es.begin() + static_cast<long>(proofs[rng.UniformBelow(proofs.size())]));
       }},
      {"deleted entry", false,
       [](Board& b, Rng& rng) {
         auto& es = b.mutable_entries_for_testing();
         es.erase(es.begin() + static_cast<long>(1 + rng.UniformBelow(es.size() - 1)));
       }},
  };

  std::map<std::string, int> detected;
  int cases = 0;
  Rng rng = Rng::FromSeed(8);
  for (uint64_t i = 0; i < 50; ++i) {
    simulation::Finished done = simulation::RunAuction(SmallAuction(5000 + i, 3 + i % 8, i % 4));
    if (!done.outcome.winner) return Fail("auction " + std::to_string(i) + " has no winner");
    if (!protocol::VerifyOutcome(done.run.board)) return Fail("honest auction " + std::to_string(i) + " invalid");
    for (const Mutation& m : mutations) {
      for (bool resign : {false, true}) {
        if (resign && !m.also_resigned) continue;
        Board copy = done.run.board;
        m.apply(copy, rng);
        if (resign) Rechain(copy, 0, done.run);
        ++cases;
        const std::string label = m.name + (resign ? " (re-signed)" : "");
        if (protocol::VerifyOutcome(copy)) {
          return Fail("auction " + std::to_string(i) + ": undetected " + label);
        }
        ++detected[label];
      }
    }
  }
  return {true, std::to_string(cases) + " mutated boards over 50 auctions, all rejected (" +
                    std::to_string(detected.size()) + " classes)"};
}

Result AppealOutcomes() {
  using protocol::Bidder;
  Rng rng = Rng::FromSeed(9);
  simulation::Config config = SmallAuction(9000, 0, 1);
  simulation::Run run = simulation::RunBidding(config);  // announce only
  ManualClock clock(simulation::kSimulationStart + std::chrono::hours(1), std::chrono::seconds(1));
  bulletin::BoardHost host(run.board, run.auctioneer.signing, clock);

  Bidder posted = protocol::MakeBidder(config.auction_id, rng);
  Bidder suppressed = protocol::MakeBidder(config.auction_id, rng);
  protocol::Register(host, posted);
  protocol::Register(host, suppressed);
  bulletin::Receipt posted_receipt =
      protocol::SubmitBid(host, posted, simulation::RandomBid(run.terms.rule, rng), rng).receipt;
  // The host signs a receipt for this bid but never appends it.
  protocol::PreparedBid hidden = protocol::PrepareBid(run.terms, suppressed.pseudonym,
                                                      simulation::RandomBid(run.terms.rule, rng), rng);
  Entry dropped = host.Prepare(Kind::kBid, protocol::SealedBidToJson(hidden.sealed), suppressed.pseudonym.hex(),
                               suppressed.signing);
  bulletin::Receipt suppressed_receipt = host.IssueReceipt(dropped);

  clock.Set(run.terms.deadline + std::chrono::minutes(5));
  protocol::OpenAndProve(host, run.auctioneer.paillier.private_key, rng);
  if (!protocol::VerifyOutcome(run.board)) return Fail("outcome invalid before appeals");

  auto dismissed = bulletin::AppealNonInclusion(host, posted_receipt, posted.pseudonym, posted.signing,
                                                run.terms.deadline);
  if (dismissed != bulletin::AppealVerdict::kDismissed) return Fail("posted-bid appeal not dismissed");
  if (!protocol::VerifyOutcome(run.board)) return Fail("dismissed appeal invalidated the outcome");

  auto upheld = bulletin::AppealNonInclusion(host, suppressed_receipt, suppressed.pseudonym,
                                             suppressed.signing, run.terms.deadline);
  if (upheld != bulletin::AppealVerdict::kUpheld) return Fail("suppressed-bid appeal not upheld");
  protocol::OutcomeVerdict after = protocol::VerifyOutcome(run.board);
  if (after) return Fail("upheld appeal left the outcome valid");
  return {true, "suppressed bid upheld (verify: " + after.reason + "), posted bid dismissed"};
}

Result TimingTables() {
  const std::vector<unsigned> bits = {512, 1024};
  const std::vector<size_t> bids = {50, 100, 200};
  std::vector<simulation::BenchRecord> records = simulation::Bench(bits, bids, 10);
  std::map<std::tuple<unsigned, size_t, simulation::Phase>, int64_t> ms;
  for (const auto& r : records) ms[{r.key_bits, r.num_bids, r.phase}] = r.elapsed_ms;

  std::string table;
  bool ok = true;
  for (unsigned b : bits) {
    for (size_t n : bids) {
      const int64_t prep = ms[{b, n, simulation::Phase::kProofPreparation}];
      const int64_t ver = ms[{b, n, simulation::Phase::kVerification}];
      table += " " + std::to_string(b) + "/" + std::to_string(n) + ":" + std::to_string(prep) + "/" +
               std::to_string(ver);
      if (ver >= prep) ok = false;
    }
  }
  for (auto phase : {simulation::Phase::kProofPreparation, simulation::Phase::kVerification}) {
    for (unsigned b : bits) {
      for (size_t k = 1; k < bids.size(); ++k) {
        if (ms[{b, bids[k], phase}] <= ms[{b, bids[k - 1], phase}]) ok = false;
      }
    }
    for (size_t n : bids) {
      if (ms[{1024, n, phase}] <= ms[{512, n, phase}]) ok = false;
    }
  }
  return {ok, "ms prep/verify" + table};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Result()> run;
    double limit_s;  // 0: no runtime bound
  };
  const std::vector<Criterion> criteria = {
      {1, "paillier correctness", PaillierCorrectness, 30},
      {2, "homomorphism suite", Homomorphisms, 60},
      {3, "randomness recovery", RandomnessRecovery, 60},
      {4, "range-proof completeness", RangeCompleteness, 0},
      {5, "range-proof forgery resistance", ForgeryResistance, 0},
      {6, "hiding structure", HidingStructure, 0},
      {7, "winner correctness", WinnerCorrectness, 300},
      {8, "tamper detection", TamperDetection, 0},
      {9, "non-inclusion appeal", AppealOutcomes, 0},
      {10, "timing tables", TimingTables, 0},
  };

  Key512();  // key generation is not part of any timed criterion
  int failures = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = Fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.ok && c.limit_s > 0 && secs >= c.limit_s) {
      r = Fail(r.detail + "; took longer than " + std::to_string(static_cast<int>(c.limit_s)) + " s");
    }
    if (!r.ok) ++failures;
    std::printf("%s [%d] %s: %s (%.1f s)\n", r.ok ? "PASS" : "FAIL", c.id, c.name, r.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
