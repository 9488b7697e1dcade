#include "sealbid/rangeproof.h"

#include <algorithm>

#include "sealbid/error.h"

namespace sealbid::rangeproof {

void CheckRangeBits(const PublicKey& pk, unsigned t) {
  if (t < 1 || PowerOfTwo(t + 1) >= pk.n()) {
    throw Error(ErrorCode::kParameter, "range bound requires 1 <= t and 2^t < n/2");
  }
}

BuiltTestSet BuildTestSet(const PublicKey& pk, const Ciphertext& c, unsigned t, Rng& rng) {
  CheckRangeBits(pk, t);
  BuiltTestSet out;
  out.set.claimed = c;
  out.set.t = t;

  std::vector<BigInt> plaintexts;
  plaintexts.reserve(2 * t);
  for (unsigned k = 0; k < t; ++k) plaintexts.push_back(PowerOfTwo(k));
  for (unsigned k = 0; k < t; ++k) plaintexts.emplace_back(0);

  // Fisher-Yates
  for (size_t i = plaintexts.size() - 1; i > 0; --i) {
    size_t j = rng.UniformBelow(i + 1);
    std::swap(plaintexts[i], plaintexts[j]);
  }

  out.set.elements.reserve(2 * t);
  out.secret.helps.reserve(2 * t);
  for (const BigInt& u : plaintexts) {
    HelpValue s;
    out.set.elements.push_back(paillier::EncryptRandom(pk, Plaintext{u}, rng, &s));
    out.secret.helps.push_back(std::move(s.r));
  }
  out.secret.plaintexts = std::move(plaintexts);
  return out;
}

RangeProof ProveRange(const PublicKey& pk, const Ciphertext& c, const Plaintext& x,
                      const HelpValue& r, const BuiltTestSet& built, Rng& rng) {
  const TestSet& ts = built.set;
  const unsigned t = ts.t;
  if (ts.claimed != c) throw Error(ErrorCode::kInconsistent, "test set was built for another cipher");
  if (x.value < 0 || x.value >= PowerOfTwo(t)) {
    throw Error(ErrorCode::kDomain, "value is not below 2^t; no range proof exists");
  }
  if (paillier::Encrypt(pk, x, r) != c) {
    throw Error(ErrorCode::kInconsistent, "cipher is not Encrypt(x, r)");
  }
  if (built.secret.plaintexts.size() != 2 * t || ts.elements.size() != 2 * t) {
    throw Error(ErrorCode::kInconsistent, "test set does not have 2t elements");
  }

  std::vector<size_t> indices;
  std::vector<size_t> zeros;
  for (size_t i = 0; i < built.secret.plaintexts.size(); ++i) {
    const BigInt& u = built.secret.plaintexts[i];
    if (u == 0) {
      zeros.push_back(i);
    } else if (mpz_tstbit(x.value.get_mpz_t(), BitLength(u) - 1)) {
      indices.push_back(i);
    }
  }
  const size_t bits = mpz_popcount(x.value.get_mpz_t());
  if (indices.size() != bits || zeros.size() != t) {
    throw Error(ErrorCode::kInconsistent, "test set secret is not well formed");
  }
  // Uniformly chosen zero encryptions complete the handover to exactly t.
  for (size_t i = 0; i < t - bits; ++i) {
    size_t j = i + rng.UniformBelow(zeros.size() - i);
    std::swap(zeros[i], zeros[j]);
    indices.push_back(zeros[i]);
  }
  std::sort(indices.begin(), indices.end());

  BigInt s = InvertMod(r.r, pk.n());
  for (size_t i : indices) s = s * built.secret.helps[i] % pk.n();
  return RangeProof{"", std::move(indices), HelpValue{std::move(s)}};
}

Verdict VerifyRange(const PublicKey& pk, const Ciphertext& c, const TestSet& ts,
                    const RangeProof& proof) {
  const unsigned t = ts.t;
  if (ts.claimed != c) return Verdict::Fail("test set is bound to a different cipher");
  if (t < 1 || PowerOfTwo(t + 1) >= pk.n()) return Verdict::Fail("test set bound violates 2^t < n/2");
  if (ts.elements.size() != 2 * size_t{t}) return Verdict::Fail("test set does not have 2t elements");
  if (proof.indices.size() != t) return Verdict::Fail("handover does not have exactly t elements");
  std::vector<size_t> sorted = proof.indices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return Verdict::Fail("handover indices repeat");
  }
  if (sorted.back() >= ts.elements.size()) return Verdict::Fail("handover index out of range");
  if (proof.s.r < 1 || proof.s.r >= pk.n() || Gcd(proof.s.r, pk.n()) != 1) {
    return Verdict::Fail("help value s is not a unit modulo n");
  }
  if (c.value < 1 || c.value >= pk.n_squared() || Gcd(c.value, pk.n()) != 1) {
    return Verdict::Fail("claimed cipher is not a unit modulo n^2");
  }

  BigInt lhs = InvertMod(c.value, pk.n_squared());
  for (size_t i : sorted) lhs = lhs * ts.elements[i].value % pk.n_squared();
  if (lhs != paillier::ZeroEncryptionFactor(pk, proof.s.r)) {
    return Verdict::Fail("handover product is not an encryption of zero under s");
  }
  return Verdict::Pass();
}

Ciphertext DifferenceCipher(const PublicKey& pk, const Ciphertext& cx, const Ciphertext& cy,
                            bool strict) {
  Ciphertext sub = strict ? paillier::HomAddConst(pk, cy, 1) : cy;
  return paillier::HomAdd(pk, cx, paillier::Invert(pk, sub));
}

namespace {

GeqOutput ProveDifference(const PublicKey& pk, const Ciphertext& cx, const Ciphertext& cy,
                          const Plaintext& x, const Plaintext& y, const HelpValue& rx,
                          const HelpValue& ry, unsigned t, bool strict, Rng& rng) {
  CheckRangeBits(pk, t);
  const BigInt bound = PowerOfTwo(t);
  if (x.value < 0 || x.value >= bound || y.value < 0 || y.value >= bound) {
    throw Error(ErrorCode::kDomain, "comparison operands must lie in [0, 2^t)");
  }
  if (y.value == pk.n() - 1) throw Error(ErrorCode::kDomain, "y = n - 1 cannot be compared");
  const BigInt y_eff = strict ? BigInt(y.value + 1) : y.value;
  if (x.value < y_eff) {
    throw Error(ErrorCode::kDomain, strict ? "cannot prove x > y: x <= y" : "cannot prove x >= y: x < y");
  }
  Ciphertext d = DifferenceCipher(pk, cx, cy, strict);
  // (n+1)^1 carries no randomness, so the help value of d is rx / ry.
  HelpValue rd{rx.r * InvertMod(ry.r, pk.n()) % pk.n()};
  Plaintext diff{x.value - y_eff};

  GeqOutput out;
  out.test_set = BuildTestSet(pk, d, t, rng);
  out.proof.minuend = cx;
  out.proof.subtrahend = cy;
  out.proof.strict = strict;
  out.proof.difference_proof = ProveRange(pk, d, diff, rd, out.test_set, rng);
  return out;
}

}  // namespace

GeqOutput ProveGeq(const PublicKey& pk, const Ciphertext& cx, const Ciphertext& cy,
                   const Plaintext& x, const Plaintext& y, const HelpValue& rx,
                   const HelpValue& ry, unsigned t, Rng& rng) {
  return ProveDifference(pk, cx, cy, x, y, rx, ry, t, false, rng);
}

GeqOutput ProveStrictGt(const PublicKey& pk, const Ciphertext& cx, const Ciphertext& cy,
                        const Plaintext& x, const Plaintext& y, const HelpValue& rx,
                        const HelpValue& ry, unsigned t, Rng& rng) {
  return ProveDifference(pk, cx, cy, x, y, rx, ry, t, true, rng);
}

Verdict VerifyGeq(const PublicKey& pk, const Ciphertext& cx, const Ciphertext& cy,
                  const TestSet& ts, const GeqProof& proof, bool strict) {
  if (proof.minuend != cx || proof.subtrahend != cy) {
    return Verdict::Fail("proof names different ciphers than the ones compared");
  }
  if (proof.strict != strict) return Verdict::Fail("proof strictness does not match the claim");
  Ciphertext d;
  try {
    d = DifferenceCipher(pk, cx, cy, strict);
  } catch (const Error&) {
    return Verdict::Fail("compared cipher is not invertible");
  }
  if (ts.claimed != d) return Verdict::Fail("test set is not bound to the recomputed difference cipher");
  return VerifyRange(pk, d, ts, proof.difference_proof);
}

nlohmann::json TestSetToJson(const TestSet& ts) {
  nlohmann::json elements = nlohmann::json::array();
  for (const Ciphertext& g : ts.elements) elements.push_back(ToHex(g.value));
  return {{"cipher", ToHex(ts.claimed.value)}, {"t", ts.t}, {"elements", elements}};
}

TestSet TestSetFromJson(const nlohmann::json& j) {
  try {
    TestSet ts;
    ts.claimed.value = FromHex(j.at("cipher").get<std::string>());
    ts.t = j.at("t").get<unsigned>();
    for (const auto& e : j.at("elements")) ts.elements.push_back({FromHex(e.get<std::string>())});
    return ts;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("bad test set: ") + e.what());
  }
}

nlohmann::json RangeProofToJson(const RangeProof& proof) {
  return {{"testset_id", proof.testset_id}, {"indices", proof.indices}, {"s", ToHex(proof.s.r)}};
}

RangeProof RangeProofFromJson(const nlohmann::json& j) {
  try {
    RangeProof p;
    p.testset_id = j.at("testset_id").get<std::string>();
    p.indices = j.at("indices").get<std::vector<size_t>>();
    p.s.r = FromHex(j.at("s").get<std::string>());
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("bad range proof: ") + e.what());
  }
}

}  // namespace sealbid::rangeproof
