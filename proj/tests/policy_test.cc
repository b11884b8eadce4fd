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
#include "tiva/policy/policy.h"

namespace tiva::policy {
namespace {

using identity::DidDocument;
using tiva::testing::ExpectErrorCode;
using tiva::testing::SeededKey;

constexpr uint64_t kDay = 86400;
constexpr uint64_t kTenUsdc = 10'000'000;  // 6-decimal minor units

class PolicyTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dids.Register(DidDocument::ForUser(user.public_key(), 0));
    dids.Register(DidDocument::ForAgent(agent.public_key(), user_did, 0));
    dids.Register(DidDocument::ForUser(stranger.public_key(), 0));
    rules.per_period_limit_minor = kTenUsdc;
    rules.period_seconds = kDay;
    rules.allowed_categories = {"cloud-services"};
    rules.currency = "USDC";
  }

  PolicyPayment Pay(uint64_t amount) {
    return {amount, "provider", "cloud-services", "USDC", agent_did};
  }

  crypto::KeyPair user = SeededKey(1);
  crypto::KeyPair agent = SeededKey(2);
  crypto::KeyPair stranger = SeededKey(3);
  Did user_did = Did::FromPublicKey(user.public_key());
  Did agent_did = Did::FromPublicKey(agent.public_key());
  identity::DidRegistry dids;
  PolicyRules rules;
};

TEST_F(PolicyTest, TenUsdcPerDay) {
  auto s = DeployPolicy(user, agent_did, rules, 3 * kDay + 5, dids);
  EXPECT_EQ(s.spent_this_epoch_minor(), 0u);
  EXPECT_EQ(s.epoch_index(), 3u);

  const uint64_t t = 3 * kDay + 100;
  auto a = Evaluate(s, Pay(4'000'000), t);
  ASSERT_TRUE(a.authorized());
  auto b = Evaluate(a.next, Pay(4'000'000), t + 1);
  ASSERT_TRUE(b.authorized());
  auto c = Evaluate(b.next, Pay(4'000'000), t + 2);
  EXPECT_EQ(c.deny, PolicyDeny::kPerPeriod);
  EXPECT_EQ(c.next, b.next);

  auto d = Evaluate(b.next, Pay(4'000'000), t + 2 + kDay);
  ASSERT_TRUE(d.authorized());
  EXPECT_EQ(d.next.spent_this_epoch_minor(), 4'000'000u);
  EXPECT_EQ(d.next.epoch_index(), 4u);
}

TEST_F(PolicyTest, DeployErrors) {
  auto bad = rules;
  bad.period_seconds = 0;
  ExpectErrorCode(ErrorCode::kBadRules,
                  [&] { DeployPolicy(user, agent_did, bad, 0, dids); });
  ExpectErrorCode(ErrorCode::kAgentNotControlled,
                  [&] { DeployPolicy(stranger, agent_did, rules, 0, dids); });
}

TEST_F(PolicyTest, DenyOrder) {
  rules.allowed_payees = {"provider"};
  rules.per_tx_limit_minor = 5'000'000;
  auto s = DeployPolicy(user, agent_did, rules, 0, dids);
  PolicyPayment p = {kTenUsdc + 1, "other", "food", "EUR", user_did};
  EXPECT_EQ(Evaluate(s, p, 1).deny, PolicyDeny::kCaller);
  p.caller = agent_did;
  EXPECT_EQ(Evaluate(s, p, 1).deny, PolicyDeny::kCurrency);
  p.currency = "USDC";
  EXPECT_EQ(Evaluate(s, p, 1).deny, PolicyDeny::kCategory);
  p.category = "cloud-services";
  EXPECT_EQ(Evaluate(s, p, 1).deny, PolicyDeny::kPayee);
  p.payee = "provider";
  EXPECT_EQ(Evaluate(s, p, 1).deny, PolicyDeny::kPerTx);
  rules.per_tx_limit_minor.reset();
  s = DeployPolicy(user, agent_did, rules, 0, dids);
  EXPECT_EQ(Evaluate(s, p, 1).deny, PolicyDeny::kPerPeriod);
}

struct Step {
  uint64_t at;
  uint64_t amount;
};

TEST_F(PolicyTest, EpochSpendMatchesResimulationOracle) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10000; ++trial) {
    rules.period_seconds = 1 + rng() % 100;
    rules.per_period_limit_minor = rng() % 50;
    auto s = DeployPolicy(user, agent_did, rules, 0, dids);
    std::vector<Step> authorized;
    std::vector<std::pair<Step, PolicyState>> log;
    uint64_t now = 0;
    const int len = 1 + static_cast<int>(rng() % 10);
    for (int i = 0; i < len; ++i) {
      now += rng() % 60;
      const uint64_t amount = rng() % 30;
      auto d = Evaluate(s, Pay(amount), now);
      // Oracle: sum everything already authorized in this window.
      uint64_t window_sum = 0;
      for (const Step& st : authorized) {
        if (st.at / rules.period_seconds == now / rules.period_seconds) {
          window_sum += st.amount;
        }
      }
      const bool fits = window_sum + amount <= rules.per_period_limit_minor;
      ASSERT_EQ(d.authorized(), fits);
      if (d.authorized()) {
        authorized.push_back({now, amount});
        ASSERT_LE(d.next.spent_this_epoch_minor(), rules.per_period_limit_minor);
        ASSERT_GE(d.next.epoch_index(), s.epoch_index());
      } else {
        // A PerPeriod denial fits a fresh window iff the amount alone fits.
        const uint64_t next_window = (now / rules.period_seconds + 1) * rules.period_seconds;
        ASSERT_EQ(Evaluate(s, Pay(amount), next_window).authorized(),
                  amount <= rules.per_period_limit_minor);
      }
      s = d.next;
      log.push_back({{now, amount}, s});
    }
    // Replay reproduces identical states.
    auto r = DeployPolicy(user, agent_did, rules, 0, dids);
    for (const auto& [st, expected] : log) {
      r = Evaluate(r, Pay(st.amount), st.at).next;
      ASSERT_EQ(r, expected);
    }
  }
}

TEST(EpochCounterTest, FitsWithoutOverflow) {
  EXPECT_TRUE(EpochCounter::Fits(0, 5, 5));
  EXPECT_FALSE(EpochCounter::Fits(1, UINT64_MAX, UINT64_MAX));
  EXPECT_FALSE(EpochCounter::Fits(6, 0, 5));
  EpochCounter c{2, 7};
  EXPECT_EQ(c.At(250, 100), (EpochCounter{2, 7}));
  EXPECT_EQ(c.At(300, 100), (EpochCounter{3, 0}));
  EXPECT_EQ(c.At(100, 100), (EpochCounter{2, 7}));
}

}  // namespace
}  // namespace tiva::policy
