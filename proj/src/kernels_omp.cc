// OpenMP loops for the per-bid kernels. Exceptions cannot cross the
// parallel region, so each iteration captures its own.

#include <omp.h>

#include "sealbid/error.h"
#include "sealbid/kernels.h"

namespace sealbid::kernels {

std::vector<OpenResult> OpenBidsParallel(const paillier::PrivateKey& sk,
                                         const scoring::ScoringRule& rule,
                                         const std::vector<OpenTask>& tasks) {
  const auto n = static_cast<std::ptrdiff_t>(tasks.size());
  std::vector<OpenResult> out(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = OpenOne(sk, rule, tasks[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  RethrowFirst(errors);
  return out;
}

std::vector<ProofResult> ProveParallel(const paillier::PublicKey& pk, unsigned t,
                                       const std::vector<ProofTask>& tasks, std::vector<Rng>& rngs) {
  if (rngs.size() < tasks.size()) throw Error(ErrorCode::kParameter, "one rng per proof task");
  const auto n = static_cast<std::ptrdiff_t>(tasks.size());
  std::vector<ProofResult> out(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = ProveOne(pk, t, tasks[i], rngs[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  RethrowFirst(errors);
  return out;
}

std::vector<rangeproof::Verdict> VerifyParallel(const paillier::PublicKey& pk,
                                                const std::vector<VerifyTask>& tasks) {
  const auto n = static_cast<std::ptrdiff_t>(tasks.size());
  std::vector<rangeproof::Verdict> out(tasks.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = VerifyOne(pk, tasks[i]);
  return out;
}

}  // namespace sealbid::kernels
