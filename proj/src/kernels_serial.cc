// Reference loops for the per-bid kernels.

#include "sealbid/kernels.h"

namespace sealbid::kernels {

std::vector<OpenResult> OpenBidsSerial(const paillier::PrivateKey& sk,
                                       const scoring::ScoringRule& rule,
                                       const std::vector<OpenTask>& tasks) {
  std::vector<OpenResult> out;
  out.reserve(tasks.size());
  for (const OpenTask& task : tasks) out.push_back(OpenOne(sk, rule, task));
  return out;
}

std::vector<ProofResult> ProveSerial(const paillier::PublicKey& pk, unsigned t,
                                     const std::vector<ProofTask>& tasks, std::vector<Rng>& rngs) {
  std::vector<ProofResult> out;
  out.reserve(tasks.size());
  for (size_t i = 0; i < tasks.size(); ++i) out.push_back(ProveOne(pk, t, tasks[i], rngs.at(i)));
  return out;
}

std::vector<rangeproof::Verdict> VerifySerial(const paillier::PublicKey& pk,
                                              const std::vector<VerifyTask>& tasks) {
  std::vector<rangeproof::Verdict> out;
  out.reserve(tasks.size());
  for (const VerifyTask& task : tasks) out.push_back(VerifyOne(pk, task));
  return out;
}

}  // namespace sealbid::kernels
