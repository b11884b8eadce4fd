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

#include "gtest/gtest.h"
#include "test_util.h"
#include "tiva/credential/credential.h"

namespace tiva::credential {
namespace {

using identity::DidDocument;
using tiva::testing::ExpectErrorCode;
using tiva::testing::RandomKey;
using tiva::testing::SeededKey;

constexpr uint64_t kFiveEth = 5'000'000'000'000'000'000ull;  // wei

class CredentialTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dids.Register(DidDocument::ForUser(user.public_key(), 0));
    dids.Register(DidDocument::ForAgent(agent.public_key(), user_did, 0));
    dids.Register(DidDocument::ForUser(other_user.public_key(), 0));
    dids.Register(DidDocument::ForAgent(other_agent.public_key(),
                                        Did::FromPublicKey(other_user.public_key()), 0));
    constraints.limit_minor = kFiveEth;
    constraints.limit_period_seconds = 86400;
    constraints.currency = "ETH";
    constraints.allowed_categories = {"cloud-services"};
    constraints.expires_at = 1'000'000;
  }

  DelegationCredential Issue(uint64_t now = 100) {
    return IssueCredential(user, agent_did, constraints, now, dids);
  }

  crypto::KeyPair user = SeededKey(1);
  crypto::KeyPair agent = SeededKey(2);
  crypto::KeyPair other_user = SeededKey(3);
  crypto::KeyPair other_agent = SeededKey(4);
  Did user_did = Did::FromPublicKey(user.public_key());
  Did agent_did = Did::FromPublicKey(agent.public_key());
  identity::DidRegistry dids;
  identity::RevocationRegistry revocations;
  SpendConstraints constraints;
};

TEST_F(CredentialTest, FiveEthPerDayForCloudServices) {
  auto cred = Issue();
  EXPECT_TRUE(VerifyCredential(cred, dids, revocations, 100).accepted());
  EXPECT_EQ(cred.credential_id,
            crypto::Hash("tiva/vc", canonical::Encode(cred.Body())));
  EXPECT_TRUE(cred.constraints.AdmitsCategory("cloud-services"));
  EXPECT_FALSE(cred.constraints.AdmitsCategory("groceries"));
  EXPECT_TRUE(cred.constraints.AdmitsPayee("anyone"));
}

TEST_F(CredentialTest, ExpiryBoundary) {
  constraints.expires_at = 100;
  auto cred = Issue(100);
  EXPECT_TRUE(VerifyCredential(cred, dids, revocations, 100).accepted());
  EXPECT_EQ(VerifyCredential(cred, dids, revocations, 101).reject,
            CredentialReject::kExpired);
}

TEST_F(CredentialTest, IssueErrors) {
  ExpectErrorCode(ErrorCode::kSubjectNotControlled, [&] {
    IssueCredential(user, Did::FromPublicKey(other_agent.public_key()),
                    constraints, 0, dids);
  });
  ExpectErrorCode(ErrorCode::kSubjectNotControlled,
                  [&] { IssueCredential(user, user_did, constraints, 0, dids); });
  auto bad = constraints;
  bad.limit_period_seconds = 0;
  ExpectErrorCode(ErrorCode::kBadConstraints,
                  [&] { IssueCredential(user, agent_did, bad, 0, dids); });
  bad = constraints;
  bad.currency = "eth";
  ExpectErrorCode(ErrorCode::kBadConstraints,
                  [&] { IssueCredential(user, agent_did, bad, 0, dids); });
  bad = constraints;
  bad.expires_at = 0;
  ExpectErrorCode(ErrorCode::kBadConstraints,
                  [&] { IssueCredential(user, agent_did, bad, 0, dids); });
  bad = constraints;
  bad.allowed_categories = {"Cloud"};
  ExpectErrorCode(ErrorCode::kBadConstraints,
                  [&] { IssueCredential(user, agent_did, bad, 0, dids); });
}

TEST_F(CredentialTest, RevokedAfterRevocation) {
  auto cred = Issue();
  identity::CredentialAnchors anchors;
  anchors.Anchor(cred.credential_id, cred.issuer);
  revocations.Revoke(
      user.Sign(identity::RevocationRegistry::RevocationMessage(cred.credential_id)),
      cred.credential_id, anchors, dids, 1);
  EXPECT_EQ(VerifyCredential(cred, dids, revocations, 100).reject,
            CredentialReject::kRevoked);
  // Signature is checked before revocation, revocation before expiry.
  EXPECT_EQ(VerifyCredential(cred, dids, revocations, 2'000'000).reject,
            CredentialReject::kRevoked);
  auto tampered = cred;
  tampered.constraints.limit_minor += 1;
  EXPECT_EQ(VerifyCredential(tampered, dids, revocations, 2'000'000).reject,
            CredentialReject::kBadSignature);
}

TEST_F(CredentialTest, LimitIncrementedAfterSigning) {
  auto cred = Issue();
  cred.constraints.limit_minor += 1;
  EXPECT_EQ(VerifyCredential(cred, dids, revocations, 100).reject,
            CredentialReject::kBadSignature);
}

TEST_F(CredentialTest, ControllerBindingCheckedAfterSignature) {
  // Signed by the real issuer, but the subject is not theirs. Only reachable
  // by bypassing IssueCredential.
  DelegationCredential cred = Issue();
  cred.subject = Did::FromPublicKey(other_agent.public_key());
  cred.credential_id = cred.ComputeId();
  cred.signature = user.Sign(canonical::Encode(cred.Body()));
  EXPECT_EQ(VerifyCredential(cred, dids, revocations, 100).reject,
            CredentialReject::kController);
}

TEST_F(CredentialTest, FileRoundTrip) {
  auto cred = Issue();
  const std::string text = canonical::EncodeString(cred.ToCanonical());
  EXPECT_EQ(DelegationCredential::FromCanonical(canonical::Decode(text)), cred);
  ExpectErrorCode(ErrorCode::kParseError, [] {
    DelegationCredential::FromCanonical(canonical::Decode(R"({"body":{}})"));
  });
}

// Mutates one field of the credential; every field is covered.
DelegationCredential Mutate(DelegationCredential c, std::mt19937_64& rng,
                            const std::vector<Did>& dids) {
  switch (rng() % 11) {
    case 0: c.credential_id.bytes[rng() % 32] ^= 1 << (rng() % 8); break;
    case 1: c.issuer = dids[rng() % dids.size()]; break;
    case 2: c.subject = dids[rng() % dids.size()]; break;
    case 3: c.constraints.limit_minor ^= uint64_t{1} << (rng() % 64); break;
    case 4: c.constraints.limit_period_seconds += 1 + rng() % 1000; break;
    case 5: c.constraints.currency = c.constraints.currency == "ETH" ? "USD" : "ETH"; break;
    case 6: c.constraints.allowed_payees.insert("payee-" + std::to_string(rng() % 100)); break;
    case 7:
      if (c.constraints.allowed_categories.empty()) {
        c.constraints.allowed_categories.insert("x");
      } else {
        c.constraints.allowed_categories.clear();
      }
      break;
    case 8: c.constraints.expires_at += 1 + rng() % 1000; break;
    case 9: c.issued_at ^= 1 + rng() % 255; break;
    case 10: c.signature.bytes[rng() % 64] ^= 1 << (rng() % 8); break;
  }
  return c;
}

TEST_F(CredentialTest, ForgeryResistance) {
  std::mt19937_64 rng(31);
  auto cred = Issue();
  std::vector<Did> all = {user_did, agent_did,
                          Did::FromPublicKey(other_user.public_key()),
                          Did::FromPublicKey(other_agent.public_key())};
  int mutated = 0;
  for (int i = 0; i < 1000; ++i) {
    auto m = Mutate(cred, rng, all);
    if (m == cred) continue;
    ++mutated;
    ASSERT_EQ(VerifyCredential(m, dids, revocations, 100).reject,
              CredentialReject::kBadSignature);
  }
  EXPECT_GT(mutated, 900);
}

TEST_F(CredentialTest, DistinctCredentialsEncodeDistinctly) {
  std::mt19937_64 rng(32);
  auto cred = Issue();
  std::vector<Did> all = {user_did, agent_did};
  for (int i = 0; i < 1000; ++i) {
    auto a = Mutate(cred, rng, all);
    auto b = Mutate(a, rng, all);
    if (a.Body() == b.Body()) continue;
    ASSERT_NE(canonical::Encode(a.Body()), canonical::Encode(b.Body()));
  }
}

TEST_F(CredentialTest, NeverAcceptsAfterExpiry) {
  std::mt19937_64 rng(33);
  auto cred = Issue();
  for (int i = 0; i < 2000; ++i) {
    const uint64_t now = rng() % 2'000'000;
    auto v = VerifyCredential(cred, dids, revocations, now);
    EXPECT_EQ(v.accepted(), now <= constraints.expires_at);
    // Pure: same inputs, same verdict.
    EXPECT_EQ(v.reject, VerifyCredential(cred, dids, revocations, now).reject);
  }
}

}  // namespace
}  // namespace tiva::credential
