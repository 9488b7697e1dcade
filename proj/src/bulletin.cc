#include "sealbid/bulletin.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <sys/stat.h>

#include "sealbid/bigint.h"
#include "sealbid/canonical_json.h"
#include "sealbid/error.h"

namespace sealbid::bulletin {

namespace {

constexpr std::pair<Kind, std::string_view> kKindNames[] = {
    {Kind::kAnnounce, "announce"}, {Kind::kRegister, "register"}, {Kind::kBid, "bid"},
    {Kind::kTestSet, "testset"},   {Kind::kProof, "proof"},       {Kind::kOutcome, "outcome"},
    {Kind::kAppeal, "appeal"},
};

nlohmann::json UnsignedJson(const Entry& e) {
  return {{"seq", e.seq},
          {"timestamp", e.timestamp},
          {"author", e.author},
          {"kind", KindName(e.kind)},
          {"payload", e.payload},
          {"prev_hash", DigestToHex(e.prev_hash)}};
}

std::span<const uint8_t> AsBytes(const std::string& s) {
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

}  // namespace

std::string_view KindName(Kind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

Kind KindFromName(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw Error(ErrorCode::kFormat, "unknown entry kind '" + std::string(name) + "'");
}

bool IsAuctioneerKind(Kind kind) {
  return kind == Kind::kAnnounce || kind == Kind::kTestSet || kind == Kind::kProof ||
         kind == Kind::kOutcome;
}

std::string SignedBytes(const Entry& e) { return CanonicalJson(UnsignedJson(e)); }

std::string EntryLine(const Entry& e) {
  nlohmann::json j = UnsignedJson(e);
  j["signature"] = BytesToHex(e.signature);
  return CanonicalJson(j);
}

Entry EntryFromLine(const std::string& line) {
  nlohmann::json j = ParseCanonicalJson(line);
  try {
    Entry e;
    e.seq = j.at("seq").get<uint64_t>();
    e.timestamp = j.at("timestamp").get<std::string>();
    e.author = j.at("author").get<std::string>();
    e.kind = KindFromName(j.at("kind").get<std::string>());
    e.payload = j.at("payload");
    e.prev_hash = DigestFromHex(j.at("prev_hash").get<std::string>());
    e.signature = HexToBytes(j.at("signature").get<std::string>());
    if (j.size() != 7) throw Error(ErrorCode::kFormat, "unexpected fields in board entry");
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kFormat, std::string("bad board entry: ") + ex.what());
  }
}

Digest EntryHash(const Entry& e) { return Sha256(EntryLine(e)); }

std::vector<uint8_t> ReceiptMessage(uint64_t seq, const Digest& hash) {
  std::vector<uint8_t> msg(8 + hash.size());
  for (int i = 0; i < 8; ++i) msg[i] = static_cast<uint8_t>(seq >> (56 - 8 * i));
  std::copy(hash.begin(), hash.end(), msg.begin() + 8);
  return msg;
}

nlohmann::json ReceiptToJson(const Receipt& r) {
  return {{"entry_seq", r.entry_seq},
          {"entry_hash", DigestToHex(r.entry_hash)},
          {"signature", BytesToHex(r.auctioneer_signature)}};
}

Receipt ReceiptFromJson(const nlohmann::json& j) {
  try {
    return Receipt{j.at("entry_seq").get<uint64_t>(),
                   DigestFromHex(j.at("entry_hash").get<std::string>()),
                   HexToBytes(j.at("signature").get<std::string>())};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("bad receipt: ") + e.what());
  }
}

Board Board::LoadFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read board " + path.string());
  Board board;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    board.entries_.push_back(EntryFromLine(line));
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "error reading board " + path.string());
  return board;
}

Board Board::OpenFile(const std::filesystem::path& path) {
  Board board = std::filesystem::exists(path) ? LoadFile(path) : Board();
  board.path_ = path;
  return board;
}

Digest Board::head_hash() const {
  return entries_.empty() ? Digest{} : EntryHash(entries_.back());
}

std::string Board::Serialize() const {
  std::string out;
  for (const Entry& e : entries_) {
    out += EntryLine(e);
    out += '\n';
  }
  return out;
}

void Board::Save(const std::filesystem::path& path) const {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out << Serialize();
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot replace " + path.string());
  }
}

void Board::Persist() {
  if (path_ && !in_batch_) Save(*path_);
}

void Board::Push(Entry entry) {
  entries_.push_back(std::move(entry));
  try {
    Persist();
  } catch (...) {
    entries_.pop_back();
    throw;
  }
}

Board::Batch::Batch(Board& board) : board_(board), start_size_(board.entries_.size()) {
  if (board_.in_batch_) throw Error(ErrorCode::kIo, "board batches do not nest");
  board_.in_batch_ = true;
}

void Board::Batch::Commit() {
  board_.in_batch_ = false;
  done_ = true;
  try {
    board_.Persist();
  } catch (...) {
    board_.entries_.resize(start_size_);
    throw;
  }
}

Board::Batch::~Batch() {
  if (!done_) {
    board_.in_batch_ = false;
    board_.entries_.resize(start_size_);
  }
}

PublishedKeys AuctioneerKeys(const Board& board) {
  if (board.size() == 0 || board.at(0).kind != Kind::kAnnounce) {
    throw Error(ErrorCode::kFormat, "board does not start with an announcement");
  }
  try {
    const auto& p = board.at(0).payload;
    return PublishedKeys{p.at("auctioneer_scheme").get<std::string>(),
                         HexToBytes(p.at("auctioneer_vk").get<std::string>())};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("announcement lacks auctioneer key: ") + e.what());
  }
}

ChainVerdict VerifyChain(const Board& board) {
  auto fail = [](uint64_t i, std::string why) { return ChainVerdict{false, i, std::move(why)}; };
  const auto& entries = board.entries();
  if (entries.empty()) return fail(0, "board is empty");

  PublishedKeys auctioneer;
  try {
    auctioneer = AuctioneerKeys(board);
  } catch (const Error& e) {
    return fail(0, e.what());
  }
  std::map<std::string, std::pair<std::string, std::vector<uint8_t>>> bidder_keys;
  Digest prev{};
  Timestamp last_time{};

  for (size_t i = 0; i < entries.size(); ++i) {
    const Entry& e = entries[i];
    if (e.seq != i) return fail(i, "sequence gap: expected " + std::to_string(i));
    if (e.prev_hash != prev) return fail(i, "hash chain broken");
    Timestamp ts;
    try {
      ts = ParseRfc3339(e.timestamp);
    } catch (const Error&) {
      return fail(i, "unparseable timestamp");
    }
    if (ts < last_time) return fail(i, "timestamp goes backwards");
    last_time = ts;
    if ((i == 0) != (e.kind == Kind::kAnnounce)) return fail(i, "announce must be exactly entry 0");

    const bool by_auctioneer = e.author == kAuctioneer;
    if (IsAuctioneerKind(e.kind) != by_auctioneer) return fail(i, "author may not post this kind");

    std::string scheme;
    std::vector<uint8_t> vk;
    try {
      if (by_auctioneer) {
        scheme = auctioneer.auctioneer_scheme;
        vk = auctioneer.auctioneer_vk;
      } else if (e.kind == Kind::kRegister || e.kind == Kind::kAppeal) {
        // Self-certifying: the payload carries the key the pseudonym was derived with.
        if (e.payload.at("pseudonym").get<std::string>() != e.author) {
          return fail(i, "payload pseudonym differs from author");
        }
        scheme = e.payload.at("scheme").get<std::string>();
        vk = HexToBytes(e.payload.at("vk").get<std::string>());
        if (e.kind == Kind::kRegister) {
          if (bidder_keys.contains(e.author)) return fail(i, "duplicate pseudonym registration");
          bidder_keys[e.author] = {scheme, vk};
        }
      } else {
        auto it = bidder_keys.find(e.author);
        if (it == bidder_keys.end()) return fail(i, "author is not registered");
        std::tie(scheme, vk) = it->second;
      }
      std::string msg = SignedBytes(e);
      if (!identity::VerifySignature(scheme, vk, AsBytes(msg), e.signature)) {
        return fail(i, "signature does not verify");
      }
    } catch (const std::exception& ex) {
      return fail(i, std::string("malformed entry: ") + ex.what());
    }
    prev = EntryHash(e);
  }
  return ChainVerdict{};
}

std::optional<uint64_t> FindEntryByHash(const Board& board, const Digest& hash) {
  for (const Entry& e : board.entries()) {
    if (EntryHash(e) == hash) return e.seq;
  }
  return std::nullopt;
}

bool VerifyReceipt(const Board& board, const Receipt& receipt) {
  PublishedKeys keys = AuctioneerKeys(board);
  try {
    return identity::VerifySignature(keys.auctioneer_scheme, keys.auctioneer_vk,
                                     ReceiptMessage(receipt.entry_seq, receipt.entry_hash),
                                     receipt.auctioneer_signature);
  } catch (const Error&) {
    return false;
  }
}

Entry BoardHost::Prepare(Kind kind, const nlohmann::json& payload, std::string_view author,
                         const identity::SigningKeypair& signer) {
  if (IsAuctioneerKind(kind) != (author == kAuctioneer)) {
    throw Error(ErrorCode::kRejected,
                std::string(author) + " may not post entries of kind " + std::string(KindName(kind)));
  }
  Entry e;
  e.seq = board_.size();
  e.timestamp = FormatRfc3339(clock_.Now());
  e.author = std::string(author);
  e.kind = kind;
  e.payload = payload;
  e.prev_hash = board_.head_hash();
  e.signature = identity::SignEntry(signer, SignedBytes(e));
  return e;
}

Receipt BoardHost::IssueReceipt(const Entry& entry) const {
  Digest h = EntryHash(entry);
  return Receipt{entry.seq, h, identity::SignEntry(auctioneer_key_, ReceiptMessage(entry.seq, h))};
}

BoardHost::Appended BoardHost::Append(Kind kind, const nlohmann::json& payload,
                                      std::string_view author,
                                      const identity::SigningKeypair& signer) {
  return Commit(Prepare(kind, payload, author, signer));
}

BoardHost::Appended BoardHost::Commit(Entry entry) {
  if (entry.seq != board_.size() || entry.prev_hash != board_.head_hash()) {
    throw Error(ErrorCode::kRejected, "entry was prepared against a different board head");
  }
  if (board_.size() > 0 &&
      ParseRfc3339(entry.timestamp) < ParseRfc3339(board_.entries().back().timestamp)) {
    throw Error(ErrorCode::kRejected, "clock is behind the board head at " + board_.entries().back().timestamp);
  }
  std::optional<Receipt> receipt;
  if (entry.kind == Kind::kRegister || entry.kind == Kind::kBid) receipt = IssueReceipt(entry);
  board_.Push(entry);
  return Appended{std::move(entry), std::move(receipt)};
}

std::string_view AppealVerdictName(AppealVerdict v) {
  switch (v) {
    case AppealVerdict::kUpheld: return "upheld";
    case AppealVerdict::kDismissed: return "dismissed";
    case AppealVerdict::kRejected: return "rejected";
  }
  return "?";
}

AppealVerdict AppealNonInclusion(BoardHost& host, const Receipt& receipt,
                                 const identity::Pseudonym& appellant,
                                 const identity::SigningKeypair& appellant_key,
                                 Timestamp deadline) {
  if (host.clock().Now() < deadline) {
    throw Error(ErrorCode::kRejected, "appeals open only after the bidding deadline");
  }
  if (!VerifyReceipt(host.board(), receipt)) return AppealVerdict::kRejected;

  std::optional<uint64_t> found = FindEntryByHash(host.board(), receipt.entry_hash);
  AppealVerdict verdict = found ? AppealVerdict::kDismissed : AppealVerdict::kUpheld;
  nlohmann::json payload = {{"pseudonym", appellant.hex()},
                            {"vk", BytesToHex(appellant_key.public_key)},
                            {"scheme", appellant_key.scheme_id},
                            {"receipt", ReceiptToJson(receipt)},
                            {"verdict", AppealVerdictName(verdict)}};
  host.Append(Kind::kAppeal, payload, appellant.hex(), appellant_key);
  return verdict;
}

nlohmann::json SigningKeyToJson(const identity::SigningKeypair& kp, bool include_private) {
  nlohmann::json j = {{"scheme", kp.scheme_id}, {"vk", BytesToHex(kp.public_key)}};
  if (include_private) j["sk"] = BytesToHex(kp.private_key);
  return j;
}

identity::SigningKeypair SigningKeyFromJson(const nlohmann::json& j) {
  try {
    identity::SigningKeypair kp;
    kp.scheme_id = j.at("scheme").get<std::string>();
    identity::SchemeById(kp.scheme_id);
    kp.public_key = HexToBytes(j.at("vk").get<std::string>());
    if (j.contains("sk")) kp.private_key = HexToBytes(j.at("sk").get<std::string>());
    return kp;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("bad signing key: ") + e.what());
  }
}

}  // namespace sealbid::bulletin
