#include "sealbid/cli.h"

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sealbid/canonical_json.h"
#include "sealbid/error.h"
#include "sealbid/protocol.h"
#include "sealbid/simulation.h"

namespace sealbid::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json ReadJsonFile(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormat, path.string() + ": " + e.what());
  }
}

void WriteJsonFile(const fs::path& path, const json& value, bool owner_only) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    if (owner_only) {
      fs::permissions(tmp, fs::perms::owner_read | fs::perms::owner_write, fs::perm_options::replace);
    }
    out << value.dump(2) << '\n';
    if (!out) throw Error(ErrorCode::kIo, "short write to " + path.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot replace " + path.string());
}

fs::path WithSuffix(const std::string& prefix, const char* suffix) { return prefix + suffix; }

// Command-scoped options; CLI11 binds into these.
struct Options {
  std::string board;
  std::string keys;
  std::string auctioneer_keys;
  std::string terms;
  std::string out;
  std::string now;
  std::string role = "auctioneer";
  std::string bid_file;
  std::string receipt;
  std::optional<uint64_t> seed;
  bool insecure_seed = false;
  bool test_mode = false;
  bool serial = false;
  int threads = 0;
  unsigned bits = 1024;
  size_t bidders = 10;
  size_t attributes = 2;
  unsigned cheaters = 0;
  std::vector<unsigned> key_bits_list{512, 1024};
  std::vector<size_t> bids_list{50, 100, 200};
};

class Command {
 public:
  Command(Options& o, std::ostream& out) : o_(o), out_(out) {}

  int Keygen();
  int Announce();
  int Register();
  int Bid();
  int Close();
  int Open();
  int Verify();
  int Appeal();
  int Simulate();
  int BenchCmd();

 private:
  Rng MakeRng() const { return o_.seed ? Rng::FromSeed(*o_.seed) : Rng::FromOsEntropy(); }

  std::unique_ptr<Clock> MakeClock() const {
    if (o_.now.empty()) return std::make_unique<SystemClock>();
    return std::make_unique<ManualClock>(ParseRfc3339(o_.now));
  }

  protocol::ExecMode Mode() const {
    return o_.serial ? protocol::ExecMode::kSerial : protocol::ExecMode::kParallel;
  }

  bulletin::Board OpenExistingBoard() const {
    if (!fs::exists(o_.board)) throw Error(ErrorCode::kIo, "board " + o_.board + " does not exist");
    return bulletin::Board::OpenFile(o_.board);
  }

  identity::SigningKeypair LoadSigning(const std::string& prefix) const {
    return bulletin::SigningKeyFromJson(ReadJsonFile(WithSuffix(prefix, ".sign.json")));
  }

  protocol::Bidder LoadBidder() const {
    protocol::Bidder b;
    b.signing = LoadSigning(o_.keys);
    json state = ReadJsonFile(WithSuffix(o_.keys, ".bidder.json"));
    b.pseudonym = identity::Pseudonym::FromHex(state.at("pseudonym").get<std::string>());
    std::vector<uint8_t> nonce = HexToBytes(state.at("nonce").get<std::string>());
    if (nonce.size() != b.nonce.size()) throw Error(ErrorCode::kFormat, "bad nonce in bidder state");
    std::copy(nonce.begin(), nonce.end(), b.nonce.begin());
    return b;
  }

  Options& o_;
  std::ostream& out_;
};

int Command::Keygen() {
  if (o_.seed && !o_.insecure_seed) {
    throw Error(ErrorCode::kRejected, "refusing a fixed seed for key generation without --insecure-seed");
  }
  Rng rng = MakeRng();
  identity::SigningKeypair signing = identity::DefaultScheme().Generate(rng);
  if (o_.role == "auctioneer") {
    paillier::KeyPair kp = paillier::GenerateKeyPair(
        o_.bits, rng, o_.test_mode ? paillier::KeyMode::kTest : paillier::KeyMode::kProduction);
    WriteJsonFile(WithSuffix(o_.out, ".pub.json"), paillier::PublicKeyToJson(kp.public_key), false);
    WriteJsonFile(WithSuffix(o_.out, ".key.json"), paillier::PrivateKeyToJson(kp.private_key), true);
    out_ << "paillier modulus: " << kp.public_key.bit_length() << " bits\n";
  } else if (o_.role != "bidder") {
    throw Error(ErrorCode::kRejected, "--role must be auctioneer or bidder");
  }
  WriteJsonFile(WithSuffix(o_.out, ".sign.json"), bulletin::SigningKeyToJson(signing, true), true);
  out_ << "verification key: " << BytesToHex(signing.public_key) << '\n';
  return kOk;
}

int Command::Announce() {
  bulletin::Board board = bulletin::Board::OpenFile(o_.board);
  paillier::PublicKey pk = paillier::PublicKeyFromJson(ReadJsonFile(WithSuffix(o_.keys, ".pub.json")));
  protocol::AuctionTerms terms = protocol::TermsFromJson(ReadJsonFile(o_.terms), pk);
  auto clock = MakeClock();
  bulletin::BoardHost host(board, LoadSigning(o_.keys), *clock);
  bulletin::Entry e = protocol::Announce(host, terms);
  out_ << "announced " << terms.auction_id << " at seq " << e.seq << ", deadline "
       << FormatRfc3339(terms.deadline) << '\n';
  return kOk;
}

int Command::Register() {
  bulletin::Board board = OpenExistingBoard();
  protocol::AuctionTerms terms = protocol::TermsFromBoard(board);
  Rng rng = MakeRng();
  protocol::Bidder bidder;
  bidder.signing = LoadSigning(o_.keys);
  bidder.nonce = identity::FreshNonce(rng);
  bidder.pseudonym = identity::GeneratePseudonym(bidder.signing.public_key, bidder.nonce, terms.auction_id);

  auto clock = MakeClock();
  bulletin::BoardHost host(board, LoadSigning(o_.auctioneer_keys), *clock);
  bulletin::Receipt receipt = protocol::Register(host, bidder);
  WriteJsonFile(WithSuffix(o_.keys, ".bidder.json"),
                {{"pseudonym", bidder.pseudonym.hex()}, {"nonce", BytesToHex(bidder.nonce)},
                 {"auction_id", terms.auction_id}},
                true);
  if (!o_.out.empty()) WriteJsonFile(o_.out, bulletin::ReceiptToJson(receipt), false);
  out_ << "registered " << bidder.pseudonym.hex() << " at seq " << receipt.entry_seq << '\n';
  return kOk;
}

int Command::Bid() {
  bulletin::Board board = OpenExistingBoard();
  protocol::Bidder bidder = LoadBidder();
  scoring::BidValues values = scoring::BidValuesFromJson(ReadJsonFile(o_.bid_file));
  Rng rng = MakeRng();
  auto clock = MakeClock();
  bulletin::BoardHost host(board, LoadSigning(o_.auctioneer_keys), *clock);
  protocol::SubmittedBid submitted = protocol::SubmitBid(host, bidder, values, rng);
  if (!o_.out.empty()) WriteJsonFile(o_.out, bulletin::ReceiptToJson(submitted.receipt), false);
  out_ << "bid accepted at seq " << submitted.entry.seq << ", receipt hash "
       << DigestToHex(submitted.receipt.entry_hash) << '\n';
  return kOk;
}

int Command::Close() {
  bulletin::Board board = bulletin::Board::LoadFile(o_.board);
  protocol::AuctionTerms terms = protocol::TermsFromBoard(board);
  auto clock = MakeClock();
  if (clock->Now() < terms.deadline) {
    throw Error(ErrorCode::kRejected, "bidding closes at " + FormatRfc3339(terms.deadline));
  }
  size_t count = 0;
  for (const bulletin::Entry& e : board.entries()) {
    if (e.kind != bulletin::Kind::kBid) continue;
    out_ << "bid seq " << e.seq << " " << e.author << " " << DigestToHex(bulletin::EntryHash(e)) << '\n';
    ++count;
  }
  out_ << "bidding closed with " << count << " bids\n";
  return kOk;
}

int Command::Open() {
  bulletin::Board board = OpenExistingBoard();
  paillier::PrivateKey sk = paillier::PrivateKeyFromJson(ReadJsonFile(WithSuffix(o_.keys, ".key.json")));
  Rng rng = MakeRng();
  auto clock = MakeClock();
  bulletin::BoardHost host(board, LoadSigning(o_.keys), *clock);
  protocol::Outcome outcome = protocol::OpenAndProve(host, sk, rng, Mode());
  for (const protocol::Disqualification& d : outcome.disqualified) {
    out_ << "disqualified bid seq " << d.bid_seq << ": " << d.reason << '\n';
  }
  if (!outcome.winner) {
    out_ << "no valid bids; no winner\n";
  } else {
    out_ << "winner " << outcome.winner->hex() << " (bid seq " << outcome.winner_bid_seq
         << ", score " << outcome.winner_score.get_str() << ")\n";
  }
  out_ << "outcome posted at seq " << outcome.outcome_seq << '\n';
  return kOk;
}

int Command::Verify() {
  bulletin::Board board;
  try {
    board = bulletin::Board::LoadFile(o_.board);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    out_ << "INVALID: unreadable board: " << e.what() << '\n';
    return kVerificationFailed;
  }
  protocol::OutcomeVerdict verdict = protocol::VerifyOutcome(board, Mode());
  if (!verdict) {
    out_ << "INVALID: " << verdict.reason << '\n';
    return kVerificationFailed;
  }
  out_ << "VALID\n";
  return kOk;
}

int Command::Appeal() {
  bulletin::Board board = OpenExistingBoard();
  protocol::AuctionTerms terms = protocol::TermsFromBoard(board);
  protocol::Bidder bidder = LoadBidder();
  bulletin::Receipt receipt = bulletin::ReceiptFromJson(ReadJsonFile(o_.receipt));
  auto clock = MakeClock();
  // Appeals need no auctioneer key: nothing is receipted.
  bulletin::BoardHost host(board, identity::SigningKeypair{}, *clock);
  bulletin::AppealVerdict verdict =
      bulletin::AppealNonInclusion(host, receipt, bidder.pseudonym, bidder.signing, terms.deadline);
  out_ << "appeal " << bulletin::AppealVerdictName(verdict) << '\n';
  return verdict == bulletin::AppealVerdict::kRejected ? kRejected : kOk;
}

int Command::Simulate() {
  simulation::Config config;
  config.bidders = o_.bidders;
  config.attributes = o_.attributes;
  config.key_bits = o_.bits;
  config.seed = o_.seed.value_or(1);
  config.cheaters_percent = o_.cheaters;
  simulation::Finished done = simulation::RunAuction(config, Mode());
  fs::path path = o_.board.empty() ? fs::path(config.auction_id + ".board.jsonl") : fs::path(o_.board);
  done.run.board.Save(path);
  out_ << "board written to " << path.string() << " (" << done.run.board.size() << " entries)\n";
  if (done.outcome.winner) {
    out_ << "winner " << done.outcome.winner->hex() << " (bid seq " << done.outcome.winner_bid_seq
         << ")\n";
  } else {
    out_ << "no winner\n";
  }
  return kOk;
}

int Command::BenchCmd() {
  std::vector<simulation::BenchRecord> records =
      simulation::Bench(o_.key_bits_list, o_.bids_list, o_.seed.value_or(1), Mode(), o_.attributes);
  if (o_.out.empty()) {
    simulation::WriteBenchCsv(out_, records);
  } else {
    std::ofstream file(o_.out, std::ios::trunc);
    if (!file) throw Error(ErrorCode::kIo, "cannot write " + o_.out);
    simulation::WriteBenchCsv(file, records);
    out_ << "wrote " << records.size() << " rows to " << o_.out << '\n';
  }
  return kOk;
}

int ExitCodeFor(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kIo: return kIoError;
    default: return kRejected;
  }
}

}  // namespace

int Run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  Options o;
  Command cmd(o, out);
  CLI::App app{"Verifiable sealed-bid multi-attribute reverse auctions"};
  app.require_subcommand(1);

  std::function<int()> action;
  auto sub = [&](const char* name, const char* help, int (Command::*fn)()) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&action, &cmd, fn] { action = [&cmd, fn] { return (cmd.*fn)(); }; });
    return s;
  };
  auto add_board = [&](CLI::App* s) { s->add_option("--board", o.board, "board file (JSONL)")->required(); };
  auto add_now = [&](CLI::App* s) { s->add_option("--now", o.now, "override the clock (RFC-3339, UTC)"); };
  auto add_seed = [&](CLI::App* s) { s->add_option("--seed", o.seed, "seed the CSPRNG"); };
  auto add_exec = [&](CLI::App* s) {
    s->add_option("--threads", o.threads, "OpenMP worker threads");
    s->add_flag("--serial", o.serial, "use the serial reference kernels");
  };

  CLI::App* keygen = sub("keygen", "generate auctioneer or bidder keys", &Command::Keygen);
  keygen->add_option("--role", o.role)->check(CLI::IsMember({"auctioneer", "bidder"}));
  keygen->add_option("--out", o.out, "output path prefix")->required();
  keygen->add_option("--bits", o.bits, "Paillier modulus size");
  keygen->add_flag("--insecure-seed", o.insecure_seed, "allow --seed for key generation");
  keygen->add_flag("--test-mode", o.test_mode, "allow undersized test keys");
  add_seed(keygen);

  CLI::App* announce = sub("announce", "publish auction terms", &Command::Announce);
  add_board(announce);
  announce->add_option("--keys", o.keys, "auctioneer key prefix")->required();
  announce->add_option("--terms", o.terms, "terms JSON")->required();
  add_now(announce);

  CLI::App* reg = sub("register", "register a fresh pseudonym", &Command::Register);
  add_board(reg);
  reg->add_option("--keys", o.keys, "bidder key prefix")->required();
  reg->add_option("--auctioneer-keys", o.auctioneer_keys, "board host key prefix")->required();
  reg->add_option("--out", o.out, "receipt output");
  add_now(reg);
  add_seed(reg);

  CLI::App* bid = sub("bid", "submit a sealed bid", &Command::Bid);
  add_board(bid);
  bid->add_option("--keys", o.keys, "bidder key prefix")->required();
  bid->add_option("--auctioneer-keys", o.auctioneer_keys, "board host key prefix")->required();
  bid->add_option("--bid", o.bid_file, "bid values JSON")->required();
  bid->add_option("--out", o.out, "receipt output");
  add_now(bid);
  add_seed(bid);

  CLI::App* close = sub("close", "check the deadline and list posted bids", &Command::Close);
  add_board(close);
  add_now(close);

  CLI::App* open = sub("open", "decrypt, determine the winner and post proofs", &Command::Open);
  add_board(open);
  open->add_option("--keys", o.keys, "auctioneer key prefix")->required();
  add_now(open);
  add_seed(open);
  add_exec(open);

  CLI::App* verify = sub("verify", "verify a published outcome", &Command::Verify);
  add_board(verify);
  add_exec(verify);

  CLI::App* appeal = sub("appeal", "appeal the non-inclusion of a receipted entry", &Command::Appeal);
  add_board(appeal);
  appeal->add_option("--keys", o.keys, "bidder key prefix")->required();
  appeal->add_option("--receipt", o.receipt, "receipt JSON")->required();
  add_now(appeal);

  CLI::App* simulate = sub("simulate", "run a complete seeded auction", &Command::Simulate);
  simulate->add_option("--bidders", o.bidders);
  simulate->add_option("--attributes", o.attributes);
  simulate->add_option("--bits", o.bits)->default_val(512);
  simulate->add_option("--cheaters", o.cheaters, "percent of bidders misstating their score");
  simulate->add_option("--board", o.board, "output board file");
  add_seed(simulate);
  add_exec(simulate);

  CLI::App* bench = sub("bench", "time proof preparation and verification", &Command::BenchCmd);
  bench->add_option("--key-bits", o.key_bits_list)->delimiter(',');
  bench->add_option("--bids", o.bids_list)->delimiter(',');
  bench->add_option("--attributes", o.attributes)->default_val(3);
  bench->add_option("--out", o.out, "CSV output");
  add_seed(bench);
  add_exec(bench);

  std::vector<const char*> args;
  for (const std::string& a : argv) args.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    protocol::SetThreads(o.threads);
    return action();
  } catch (const Error& e) {
    err << "error (" << ErrorCodeName(e.code()) << "): " << e.what() << '\n';
    return ExitCodeFor(e);
  } catch (const fs::filesystem_error& e) {
    err << "error (io): " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRejected;
  }
}

}  // namespace sealbid::cli
