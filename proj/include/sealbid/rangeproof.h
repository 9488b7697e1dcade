#ifndef SEALBID_RANGEPROOF_H_
#define SEALBID_RANGEPROOF_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "sealbid/paillier.h"
#include "sealbid/rng.h"

namespace sealbid::rangeproof {

using paillier::Ciphertext;
using paillier::HelpValue;
using paillier::Plaintext;
using paillier::PublicKey;

// 2t encryptions for the assertion "claimed encrypts a value below 2^t":
// each power of two 1..2^(t-1) exactly once and t encryptions of zero, in
// uniformly random order.
struct TestSet {
  Ciphertext claimed;
  unsigned t = 0;
  std::vector<Ciphertext> elements;
};

// Prover-only side table, index-aligned with TestSet::elements.
struct TestSetSecret {
  std::vector<BigInt> plaintexts;
  std::vector<BigInt> helps;
};

// Handover values: t distinct indices into the published test set and the
// combined help value s.
struct RangeProof {
  std::string testset_id;
  std::vector<size_t> indices;
  HelpValue s;
};

struct GeqProof {
  Ciphertext minuend;
  Ciphertext subtrahend;
  bool strict = false;
  RangeProof difference_proof;
};

struct Verdict {
  bool ok = true;
  std::string reason;

  explicit operator bool() const { return ok; }
  static Verdict Pass() { return {}; }
  static Verdict Fail(std::string why) { return {false, std::move(why)}; }
};

// Throws Error(kParameter) unless t >= 1 and 2^t < n/2.
void CheckRangeBits(const PublicKey& pk, unsigned t);

struct BuiltTestSet {
  TestSet set;
  TestSetSecret secret;
};

BuiltTestSet BuildTestSet(const PublicKey& pk, const Ciphertext& c, unsigned t, Rng& rng);

// Requires c = Encrypt(x, r), x < 2^t and `built` made for c. The zero
// encryptions that pad the handover to t elements are drawn from `rng`.
RangeProof ProveRange(const PublicKey& pk, const Ciphertext& c, const Plaintext& x,
                      const HelpValue& r, const BuiltTestSet& built, Rng& rng);

// Public: checks the handover shape and
//   c^-1 * prod(handed-over elements) = s^n   (mod n^2).
Verdict VerifyRange(const PublicKey& pk, const Ciphertext& c, const TestSet& ts,
                    const RangeProof& proof);

struct GeqOutput {
  BuiltTestSet test_set;
  GeqProof proof;
};

// Proves x >= y from Encrypt(x, rx) and Encrypt(y, ry) via a range proof
// on the quotient cipher, which encrypts x - y under rx / ry.
GeqOutput ProveGeq(const PublicKey& pk, const Ciphertext& cx, const Ciphertext& cy,
                   const Plaintext& x, const Plaintext& y, const HelpValue& rx,
                   const HelpValue& ry, unsigned t, Rng& rng);

// Proves x > y as x >= y + 1.
GeqOutput ProveStrictGt(const PublicKey& pk, const Ciphertext& cx, const Ciphertext& cy,
                        const Plaintext& x, const Plaintext& y, const HelpValue& rx,
                        const HelpValue& ry, unsigned t, Rng& rng);

// cx * (cy * (n+1)^strict)^-1, the cipher a >= / > proof speaks about.
Ciphertext DifferenceCipher(const PublicKey& pk, const Ciphertext& cx, const Ciphertext& cy,
                            bool strict);

Verdict VerifyGeq(const PublicKey& pk, const Ciphertext& cx, const Ciphertext& cy,
                  const TestSet& ts, const GeqProof& proof, bool strict);

nlohmann::json TestSetToJson(const TestSet& ts);
TestSet TestSetFromJson(const nlohmann::json& j);
nlohmann::json RangeProofToJson(const RangeProof& proof);
RangeProof RangeProofFromJson(const nlohmann::json& j);

}  // namespace sealbid::rangeproof

#endif  // SEALBID_RANGEPROOF_H_
