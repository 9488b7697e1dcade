#ifndef SEALBID_BULLETIN_H_
#define SEALBID_BULLETIN_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sealbid/identity.h"
#include "sealbid/timeutil.h"

namespace sealbid::bulletin {

enum class Kind { kAnnounce, kRegister, kBid, kTestSet, kProof, kOutcome, kAppeal };

std::string_view KindName(Kind kind);
Kind KindFromName(std::string_view name);

// Only the auctioneer may post these.
bool IsAuctioneerKind(Kind kind);

inline constexpr std::string_view kAuctioneer = "auctioneer";

struct Entry {
  uint64_t seq = 0;
  std::string timestamp;
  std::string author;  // "auctioneer" or a pseudonym in hex
  Kind kind = Kind::kAnnounce;
  nlohmann::json payload;
  std::vector<uint8_t> signature;
  Digest prev_hash{};
};

// Canonical bytes the author signs: every field except the signature.
std::string SignedBytes(const Entry& e);
// Canonical JSON line of the full entry, as persisted.
std::string EntryLine(const Entry& e);
Entry EntryFromLine(const std::string& line);
Digest EntryHash(const Entry& e);

struct Receipt {
  uint64_t entry_seq = 0;
  Digest entry_hash{};
  std::vector<uint8_t> auctioneer_signature;
};

// 8-byte big-endian seq followed by the 32-byte entry hash.
std::vector<uint8_t> ReceiptMessage(uint64_t seq, const Digest& hash);
nlohmann::json ReceiptToJson(const Receipt& r);
Receipt ReceiptFromJson(const nlohmann::json& j);

// Append-only log, optionally backed by a JSONL file that is rewritten via
// atomic rename after every append (or once per batch).
class Board {
 public:
  Board() = default;

  // Loads `path` if it exists; every later append persists to it.
  static Board OpenFile(const std::filesystem::path& path);
  // Reads `path` without attaching it for writing.
  static Board LoadFile(const std::filesystem::path& path);

  const std::vector<Entry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  const Entry& at(uint64_t seq) const { return entries_.at(seq); }
  Digest head_hash() const;

  // Appends a fully formed entry (seq/prev_hash already set). Persists
  // unless a batch is open; on I/O failure the entry is dropped and
  // Error(kIo) is thrown.
  void Push(Entry entry);

  // Groups appends into one persisted write. Entries pushed inside the
  // batch are dropped again unless Commit() succeeds.
  class Batch {
   public:
    explicit Batch(Board& board);
    ~Batch();
    Batch(const Batch&) = delete;
    Batch& operator=(const Batch&) = delete;

    void Commit();

   private:
    Board& board_;
    size_t start_size_;
    bool done_ = false;
  };

  void Save(const std::filesystem::path& path) const;
  std::string Serialize() const;

  // Test hook: raw mutable access to simulate tampering.
  std::vector<Entry>& mutable_entries_for_testing() { return entries_; }

 private:
  void Persist();

  std::vector<Entry> entries_;
  std::optional<std::filesystem::path> path_;
  bool in_batch_ = false;
};

struct ChainVerdict {
  bool ok = true;
  std::optional<uint64_t> bad_index;
  std::string reason;
  explicit operator bool() const { return ok; }
};

// Sequence numbers, hash chain, authorship rules and every signature. The
// auctioneer key comes from the announce entry at seq 0; bidder keys from
// their register entries.
ChainVerdict VerifyChain(const Board& board);

// The key material the board itself publishes.
struct PublishedKeys {
  std::string auctioneer_scheme;
  std::vector<uint8_t> auctioneer_vk;
};

// Reads the auctioneer's verification key out of the announce entry.
PublishedKeys AuctioneerKeys(const Board& board);

// Looks up the entry whose hash equals `hash`.
std::optional<uint64_t> FindEntryByHash(const Board& board, const Digest& hash);

bool VerifyReceipt(const Board& board, const Receipt& receipt);

// The auctioneer side of the board: stamps, signs and chains entries and
// issues receipts for bidder submissions.
class BoardHost {
 public:
  BoardHost(Board& board, identity::SigningKeypair auctioneer_key, Clock& clock)
      : board_(board), auctioneer_key_(std::move(auctioneer_key)), clock_(clock) {}

  struct Appended {
    Entry entry;
    std::optional<Receipt> receipt;
  };

  // `signer` is the author's key. Register and bid entries get a receipt.
  Appended Append(Kind kind, const nlohmann::json& payload, std::string_view author,
                  const identity::SigningKeypair& signer);

  Appended PostAsAuctioneer(Kind kind, const nlohmann::json& payload) {
    return Append(kind, payload, kAuctioneer, auctioneer_key_);
  }

  // Builds a signed entry at the next sequence number without appending
  // it; Commit() then appends it. Throws Error(kRejected) when the author
  // may not post this kind.
  Entry Prepare(Kind kind, const nlohmann::json& payload, std::string_view author,
                const identity::SigningKeypair& signer);
  Appended Commit(Entry entry);
  Receipt IssueReceipt(const Entry& entry) const;

  Board& board() { return board_; }
  Clock& clock() { return clock_; }
  const identity::SigningKeypair& auctioneer_key() const { return auctioneer_key_; }

 private:
  Board& board_;
  identity::SigningKeypair auctioneer_key_;
  Clock& clock_;
};

enum class AppealVerdict { kUpheld, kDismissed, kRejected };
std::string_view AppealVerdictName(AppealVerdict v);

// Upheld if the receipt is genuine but its entry is missing from the
// board, dismissed if present; both are recorded as an appeal entry signed
// by the appellant. A receipt with a bad auctioneer signature is rejected
// and not recorded. Throws Error(kRejected) before the deadline.
AppealVerdict AppealNonInclusion(BoardHost& host, const Receipt& receipt,
                                 const identity::Pseudonym& appellant,
                                 const identity::SigningKeypair& appellant_key,
                                 Timestamp deadline);

nlohmann::json SigningKeyToJson(const identity::SigningKeypair& kp, bool include_private);
identity::SigningKeypair SigningKeyFromJson(const nlohmann::json& j);

}  // namespace sealbid::bulletin

#endif  // SEALBID_BULLETIN_H_
