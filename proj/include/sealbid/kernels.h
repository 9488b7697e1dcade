#ifndef SEALBID_KERNELS_H_
#define SEALBID_KERNELS_H_

// Per-bid work of the opening and verification phases. Every kernel has a
// serial reference loop and an OpenMP loop over the same per-item function;
// outputs are index-aligned with inputs and identical between the two.

#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "sealbid/paillier.h"
#include "sealbid/rangeproof.h"
#include "sealbid/rng.h"
#include "sealbid/scoring.h"

namespace sealbid::kernels {

using paillier::Ciphertext;
using paillier::HelpValue;

struct OpenTask {
  std::vector<Ciphertext> attribute_ciphers;  // K attributes, then price
  Ciphertext score_cipher;
};

struct OpenResult {
  bool valid = false;
  std::string reason;  // set when !valid
  BigInt score;
  HelpValue score_help;
};

OpenResult OpenOne(const paillier::PrivateKey& sk, const scoring::ScoringRule& rule,
                   const OpenTask& task);

std::vector<OpenResult> OpenBidsSerial(const paillier::PrivateKey& sk,
                                       const scoring::ScoringRule& rule,
                                       const std::vector<OpenTask>& tasks);
std::vector<OpenResult> OpenBidsParallel(const paillier::PrivateKey& sk,
                                         const scoring::ScoringRule& rule,
                                         const std::vector<OpenTask>& tasks);

enum class Relation { kRange, kGeq, kGreater };

struct ProofTask {
  Relation relation = Relation::kRange;
  // kRange: subject/value/help describe the cipher proved < 2^t.
  // kGeq/kGreater: subject is the minuend, other the subtrahend.
  Ciphertext subject;
  BigInt value;
  HelpValue help;
  Ciphertext other;
  BigInt other_value;
  HelpValue other_help;
};

struct ProofResult {
  rangeproof::TestSet test_set;
  rangeproof::RangeProof range;      // kRange
  rangeproof::GeqProof comparison;   // kGeq / kGreater
};

ProofResult ProveOne(const paillier::PublicKey& pk, unsigned t, const ProofTask& task, Rng& rng);

// rngs[i] drives task i.
std::vector<ProofResult> ProveSerial(const paillier::PublicKey& pk, unsigned t,
                                     const std::vector<ProofTask>& tasks, std::vector<Rng>& rngs);
std::vector<ProofResult> ProveParallel(const paillier::PublicKey& pk, unsigned t,
                                       const std::vector<ProofTask>& tasks, std::vector<Rng>& rngs);

struct VerifyTask {
  Relation relation = Relation::kRange;
  Ciphertext subject;  // range: proved cipher; comparison: minuend
  Ciphertext other;    // comparison: subtrahend
  rangeproof::TestSet test_set;
  rangeproof::RangeProof range;
  rangeproof::GeqProof comparison;
};

rangeproof::Verdict VerifyOne(const paillier::PublicKey& pk, const VerifyTask& task);

std::vector<rangeproof::Verdict> VerifySerial(const paillier::PublicKey& pk,
                                              const std::vector<VerifyTask>& tasks);
std::vector<rangeproof::Verdict> VerifyParallel(const paillier::PublicKey& pk,
                                                const std::vector<VerifyTask>& tasks);

// Rethrows the first captured exception, if any.
void RethrowFirst(const std::vector<std::exception_ptr>& errors);

}  // namespace sealbid::kernels

#endif  // SEALBID_KERNELS_H_
