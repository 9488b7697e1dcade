#include "sealbid/kernels.h"

#include "sealbid/error.h"

namespace sealbid::kernels {

OpenResult OpenOne(const paillier::PrivateKey& sk, const scoring::ScoringRule& rule,
                   const OpenTask& task) {
  OpenResult out;
  const size_t k = rule.attributes.size();
  if (task.attribute_ciphers.size() != k + 1) {
    out.reason = "wrong-cipher-count";
    return out;
  }
  const BigInt bound = PowerOfTwo(rule.t);
  scoring::BidValues values;
  paillier::Plaintext score_plain;
  try {
    for (size_t i = 0; i <= k; ++i) {
      BigInt m = paillier::Decrypt(sk, task.attribute_ciphers[i]).value;
      if (m >= bound) {
        out.reason = "attribute-out-of-range";
        return out;
      }
      scoring::Rational x = scoring::DecodeFixedPoint(m, rule.value_scale);
      if (i < k) {
        values.attributes.push_back(x);
      } else {
        values.price = x;
      }
    }
    score_plain = paillier::Decrypt(sk, task.score_cipher);
  } catch (const Error&) {
    out.reason = "undecryptable";
    return out;
  }

  BigInt recomputed;
  try {
    recomputed = scoring::ScoreBid(rule, values);
  } catch (const Error&) {
    out.reason = "attribute-out-of-domain";
    return out;
  }
  if (score_plain.value != recomputed) {
    out.reason = "score-mismatch";
    return out;
  }
  out.valid = true;
  out.score = recomputed;
  out.score_help = paillier::RecoverRandomness(sk, task.score_cipher, score_plain);
  return out;
}

ProofResult ProveOne(const paillier::PublicKey& pk, unsigned t, const ProofTask& task, Rng& rng) {
  ProofResult out;
  switch (task.relation) {
    case Relation::kRange: {
      rangeproof::BuiltTestSet built = rangeproof::BuildTestSet(pk, task.subject, t, rng);
      out.range = rangeproof::ProveRange(pk, task.subject, {task.value}, task.help, built, rng);
      out.test_set = std::move(built.set);
      break;
    }
    case Relation::kGeq:
    case Relation::kGreater: {
      auto prove = task.relation == Relation::kGeq ? rangeproof::ProveGeq : rangeproof::ProveStrictGt;
      rangeproof::GeqOutput g = prove(pk, task.subject, task.other, {task.value},
                                      {task.other_value}, task.help, task.other_help, t, rng);
      out.comparison = std::move(g.proof);
      out.test_set = std::move(g.test_set.set);
      break;
    }
  }
  return out;
}

rangeproof::Verdict VerifyOne(const paillier::PublicKey& pk, const VerifyTask& task) {
  try {
    if (task.relation == Relation::kRange) {
      return rangeproof::VerifyRange(pk, task.subject, task.test_set, task.range);
    }
    return rangeproof::VerifyGeq(pk, task.subject, task.other, task.test_set, task.comparison,
                                 task.relation == Relation::kGreater);
  } catch (const std::exception& e) {
    return rangeproof::Verdict::Fail(std::string("verification error: ") + e.what());
  }
}

void RethrowFirst(const std::vector<std::exception_ptr>& errors) {
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace sealbid::kernels
