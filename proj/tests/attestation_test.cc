// Copyright 2026 The TIVA Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>
#include <set>

#include "gtest/gtest.h"
#include "test_util.h"
#include "tiva/attestation/attestation.h"

namespace tiva::attestation {
namespace {

using tiva::testing::RandomKey;
using tiva::testing::SeededKey;

const Digest kGoodCode = crypto::Hash("test/code", "agent-v1");
const Digest kBadCode = crypto::Hash("test/code", "agent-v1-tampered");

class AttestationTest : public ::testing::Test {
 protected:
  void SetUp() override {
    for (uint8_t i = 0; i < 4; ++i) {
      enclaves.push_back(EnclaveIdentity::Endorse(root, SeededKey(20 + i), kGoodCode));
    }
    policy.root_key = root.public_key();
    policy.whitelisted_code_hashes = {kGoodCode};
    policy.required_quotes_k = 2;
    for (int i = 0; i < 3; ++i) policy.enclave_set.push_back(enclaves[i].public_key());
  }

  crypto::KeyPair root = SeededKey(10);
  std::vector<EnclaveIdentity> enclaves;
  AttestationPolicy policy;
  Digest payment = crypto::Hash("test/payment", "p1");
};

TEST_F(AttestationTest, TwoOfThree) {
  ASSERT_TRUE(policy.IsValid());
  std::vector<AttestationQuote> q = {IssueQuote(enclaves[0], payment, 100),
                                     IssueQuote(enclaves[1], payment, 100)};
  auto v = VerifyQuotes(q, payment, policy, 100);
  EXPECT_TRUE(v.accepted());
  EXPECT_EQ(v.distinct_valid, 2u);
}

TEST_F(AttestationTest, TamperedEnclaveRefusedLeavesNoQuorum) {
  auto tampered = EnclaveIdentity::Endorse(root, SeededKey(21), kBadCode);
  std::vector<AttestationQuote> q = {IssueQuote(tampered, payment, 100),
                                     IssueQuote(enclaves[0], payment, 100)};
  EXPECT_EQ(CheckQuote(q[0], payment, policy, 100), AttestationReject::kCodeHash);
  EXPECT_EQ(VerifyQuotes(q, payment, policy, 100).reject, AttestationReject::kQuorum);
}

TEST_F(AttestationTest, DuplicatesCountOnce) {
  std::vector<AttestationQuote> q = {IssueQuote(enclaves[0], payment, 100),
                                     IssueQuote(enclaves[0], payment, 101)};
  auto v = VerifyQuotes(q, payment, policy, 101);
  EXPECT_EQ(v.distinct_valid, 1u);
  EXPECT_EQ(v.reject, AttestationReject::kQuorum);
}

TEST_F(AttestationTest, PerQuoteReasons) {
  policy.required_quotes_k = 1;
  auto good = IssueQuote(enclaves[0], payment, 100);
  EXPECT_EQ(CheckQuote(good, payment, policy, 100), std::nullopt);

  auto bad_sig = good;
  bad_sig.issued_at += 1;
  EXPECT_EQ(CheckQuote(bad_sig, payment, policy, 101), AttestationReject::kSignature);

  auto forged = EnclaveIdentity::Endorse(SeededKey(11), SeededKey(20), kGoodCode);
  EXPECT_EQ(CheckQuote(IssueQuote(forged, payment, 100), payment, policy, 100),
            AttestationReject::kEndorsement);
  // Endorsed, but not in the configured enclave set.
  EXPECT_EQ(CheckQuote(IssueQuote(enclaves[3], payment, 100), payment, policy, 100),
            AttestationReject::kEndorsement);

  const Digest other = crypto::Hash("test/payment", "p2");
  EXPECT_EQ(CheckQuote(good, other, policy, 100), AttestationReject::kBinding);
  EXPECT_EQ(VerifyQuotes({good}, other, policy, 100).reject, AttestationReject::kBinding);

  EXPECT_EQ(CheckQuote(good, payment, policy, 400), std::nullopt);
  EXPECT_EQ(CheckQuote(good, payment, policy, 401), AttestationReject::kFreshness);
  EXPECT_EQ(CheckQuote(good, payment, policy, 99), AttestationReject::kFreshness);

  EXPECT_EQ(VerifyQuotes({}, payment, policy, 100).reject, AttestationReject::kQuorum);
}

TEST_F(AttestationTest, WhitelistRemovalInvalidatesFutureQuotes) {
  policy.required_quotes_k = 1;
  auto q = IssueQuote(enclaves[0], payment, 100);
  EXPECT_TRUE(VerifyQuotes({q}, payment, policy, 100).accepted());
  policy.whitelisted_code_hashes.clear();
  EXPECT_EQ(VerifyQuotes({q}, payment, policy, 100).reject, AttestationReject::kCodeHash);
}

TEST_F(AttestationTest, TransplantationAlwaysRejects) {
  std::mt19937_64 rng(71);
  policy.required_quotes_k = 1;
  for (int i = 0; i < 1000; ++i) {
    const Digest a = crypto::Hash("test/payment", std::to_string(rng()));
    const Digest b = crypto::Hash("test/payment", std::to_string(rng()));
    if (a == b) continue;
    auto q = IssueQuote(enclaves[rng() % 3], a, 100);
    ASSERT_FALSE(VerifyQuotes({q}, b, policy, 100).accepted());
  }
}

TEST_F(AttestationTest, PolicyValidityAndRoundTrip) {
  auto p = policy;
  p.required_quotes_k = 4;
  EXPECT_FALSE(p.IsValid());
  p.required_quotes_k = 0;
  EXPECT_FALSE(p.IsValid());
  p = policy;
  p.enclave_set.push_back(p.enclave_set[0]);
  EXPECT_FALSE(p.IsValid());
  const std::string text = canonical::EncodeString(policy.ToCanonical());
  EXPECT_EQ(AttestationPolicy::FromCanonical(canonical::Decode(text)), policy);
  auto q = IssueQuote(enclaves[0], payment, 7);
  EXPECT_EQ(AttestationQuote::FromCanonical(
                canonical::Decode(canonical::EncodeString(q.ToCanonical()))),
            q);
}

}  // namespace
}  // namespace tiva::attestation
