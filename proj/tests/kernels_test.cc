#include "sealbid/kernels.h"

#include <gtest/gtest.h>

#include "sealbid/error.h"
#include "sealbid/protocol.h"
#include "sealbid/simulation.h"

namespace sealbid::kernels {
namespace {

using paillier::Encrypt;
using paillier::EncryptRandom;

class KernelsTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    Rng rng = Rng::FromSeed(404);
    key_ = new paillier::KeyPair(paillier::GenerateKeyPair(256, rng, paillier::KeyMode::kTest));
  }
  static void TearDownTestSuite() { delete key_; }
  static paillier::KeyPair* key_;
  Rng rng_ = Rng::FromSeed(5);
};

paillier::KeyPair* KernelsTest::key_ = nullptr;

TEST_F(KernelsTest, OpenSerialMatchesParallel) {
  protocol::AuctionTerms terms;
  terms.auction_id = "k";
  terms.rule = simulation::RandomRule(3, 16, rng_);
  terms.paillier_pk = key_->public_key;
  const auto& pk = key_->public_key;

  std::vector<OpenTask> tasks;
  for (int i = 0; i < 24; ++i) {
    protocol::PreparedBid bid =
        protocol::PrepareBid(terms, identity::Pseudonym(), simulation::RandomBid(terms.rule, rng_), rng_);
    OpenTask task{bid.sealed.attribute_ciphers, bid.sealed.score_cipher};
    if (i % 6 == 1) task.score_cipher = EncryptRandom(pk, {bid.opening.score_claim + 1}, rng_);
    if (i % 6 == 2) task.attribute_ciphers.pop_back();
    if (i % 6 == 3) task.attribute_ciphers[0] = EncryptRandom(pk, {PowerOfTwo(20)}, rng_);
    if (i % 6 == 4) task.score_cipher = {pk.n()};  // not a unit
    tasks.push_back(task);
  }
  std::vector<OpenResult> serial = OpenBidsSerial(key_->private_key, terms.rule, tasks);
  std::vector<OpenResult> parallel = OpenBidsParallel(key_->private_key, terms.rule, tasks);
  ASSERT_EQ(serial.size(), tasks.size());
  for (size_t i = 0; i < tasks.size(); ++i) {
    EXPECT_EQ(serial[i].valid, parallel[i].valid) << i;
    EXPECT_EQ(serial[i].reason, parallel[i].reason) << i;
    EXPECT_EQ(serial[i].score, parallel[i].score) << i;
    EXPECT_EQ(serial[i].score_help, parallel[i].score_help) << i;
    const bool should_be_valid = i % 6 == 0 || i % 6 == 5;
    EXPECT_EQ(serial[i].valid, should_be_valid) << i << ": " << serial[i].reason;
    if (serial[i].valid) {
      EXPECT_EQ(Encrypt(pk, {serial[i].score}, serial[i].score_help), tasks[i].score_cipher);
    }
  }
  EXPECT_EQ(serial[1].reason, "score-mismatch");
  EXPECT_EQ(serial[2].reason, "wrong-cipher-count");
  EXPECT_EQ(serial[4].reason, "undecryptable");
}

TEST_F(KernelsTest, ProveAndVerifySerialMatchesParallel) {
  const auto& pk = key_->public_key;
  const unsigned t = 12;
  std::vector<ProofTask> tasks;
  for (int i = 0; i < 16; ++i) {
    ProofTask task;
    task.relation = static_cast<Relation>(i % 3);
    task.value = rng_.BelowBig(PowerOfTwo(t - 1)) + PowerOfTwo(t - 1);
    task.help = {rng_.UnitModulo(pk.n())};
    task.subject = Encrypt(pk, {task.value}, task.help);
    task.other_value = rng_.BelowBig(PowerOfTwo(t - 1));
    task.other_help = {rng_.UnitModulo(pk.n())};
    task.other = Encrypt(pk, {task.other_value}, task.other_help);
    tasks.push_back(task);
  }
  auto forks = [&] {
    Rng base = Rng::FromSeed(17);
    std::vector<Rng> rngs;
    for (size_t i = 0; i < tasks.size(); ++i) rngs.push_back(base.Fork());
    return rngs;
  };
  std::vector<Rng> a = forks(), b = forks();
  std::vector<ProofResult> serial = ProveSerial(pk, t, tasks, a);
  std::vector<ProofResult> parallel = ProveParallel(pk, t, tasks, b);

  std::vector<VerifyTask> verify;
  for (size_t i = 0; i < tasks.size(); ++i) {
    EXPECT_EQ(serial[i].test_set.elements, parallel[i].test_set.elements) << i;
    EXPECT_EQ(serial[i].range.indices, parallel[i].range.indices) << i;
    EXPECT_EQ(serial[i].comparison.difference_proof.s, parallel[i].comparison.difference_proof.s) << i;
    VerifyTask v{tasks[i].relation, tasks[i].subject, tasks[i].other, serial[i].test_set,
                 serial[i].range, serial[i].comparison};
    if (i % 5 == 4) v.range.s.r += 1, v.comparison.difference_proof.s.r += 1;
    verify.push_back(v);
  }
  std::vector<rangeproof::Verdict> vs = VerifySerial(pk, verify);
  std::vector<rangeproof::Verdict> vp = VerifyParallel(pk, verify);
  for (size_t i = 0; i < verify.size(); ++i) {
    EXPECT_EQ(vs[i].ok, vp[i].ok) << i;
    EXPECT_EQ(vs[i].reason, vp[i].reason) << i;
    EXPECT_EQ(vs[i].ok, i % 5 != 4) << i << ": " << vs[i].reason;
  }
}

TEST_F(KernelsTest, ProveFailureSurfacesInBothModes) {
  const auto& pk = key_->public_key;
  ProofTask bad;
  bad.relation = Relation::kRange;
  bad.value = PowerOfTwo(12);
  bad.help = {1};
  bad.subject = Encrypt(pk, {bad.value}, bad.help);
  std::vector<ProofTask> tasks(3, bad);
  std::vector<Rng> rngs;
  for (int i = 0; i < 3; ++i) rngs.push_back(Rng::FromSeed(i));
  EXPECT_THROW(ProveSerial(pk, 12, tasks, rngs), Error);
  EXPECT_THROW(ProveParallel(pk, 12, tasks, rngs), Error);
}

TEST(AuctionModesTest, SerialAndParallelBoardsAreIdentical) {
  simulation::Config config;
  config.bidders = 12;
  config.attributes = 2;
  config.key_bits = 256;
  config.seed = 9;
  config.cheaters_percent = 20;
  simulation::Finished serial = simulation::RunAuction(config, protocol::ExecMode::kSerial);
  simulation::Finished parallel = simulation::RunAuction(config, protocol::ExecMode::kParallel);
  EXPECT_EQ(serial.run.board.Serialize(), parallel.run.board.Serialize());
  protocol::OutcomeVerdict vs = protocol::VerifyOutcome(serial.run.board, protocol::ExecMode::kSerial);
  protocol::OutcomeVerdict vp = protocol::VerifyOutcome(serial.run.board, protocol::ExecMode::kParallel);
  EXPECT_TRUE(vs.ok) << vs.reason;
  EXPECT_TRUE(vp.ok) << vp.reason;
}

}  // namespace
}  // namespace sealbid::kernels
