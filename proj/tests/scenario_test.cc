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

#include "tiva/scenario/scenario.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "test_util.h"
#include "tiva/ledger/event.h"

namespace tiva::scenario {
namespace {

using testing::ExpectErrorCode;

const std::filesystem::path kDir = TIVA_SCENARIO_DIR;

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string Minimal(const std::string& steps, const std::string& expectations = "[]",
                    const std::string& version = "1") {
  return R"({"actors": {"users": {"alice": {"seed": "a"}},
                        "agents": {"bot": {"seed": "b", "controller": "alice"}}},
             "expectations": )" +
         expectations + R"(, "name": "t", "steps": )" + steps +
         R"(, "version": )" + version + "}";
}

TEST(ScenarioParseTest, RejectsMalformedFiles) {
  const std::string reg = R"({"action": "register", "at": 5, "params": {"actor": "alice"}})";
  EXPECT_NO_THROW(Scenario::Parse(Minimal("[" + reg + "]")));
  ExpectErrorCode(ErrorCode::kParseError, [] { Scenario::Parse("{"); });
  ExpectErrorCode(ErrorCode::kParseError, [] { Scenario::Parse("[]"); });
  ExpectErrorCode(ErrorCode::kParseError, [&] { Scenario::Parse(Minimal("[]", "[]", "2")); });
  ExpectErrorCode(ErrorCode::kParseError, [] {
    Scenario::Parse(Minimal(R"([{"action": "teleport", "at": 0, "params": {}}])"));
  });
  // Time goes backwards.
  ExpectErrorCode(ErrorCode::kParseError, [&] {
    Scenario::Parse(Minimal(
        "[" + reg + R"(, {"action": "register", "at": 4, "params": {"actor": "bot"}}])"));
  });
  // Undefined actor.
  ExpectErrorCode(ErrorCode::kParseError, [] {
    Scenario::Parse(Minimal(R"([{"action": "register", "at": 0, "params": {"actor": "eve"}}])"));
  });
  // Expectation for a step that does not exist, and a bad verdict.
  ExpectErrorCode(ErrorCode::kParseError, [&] {
    Scenario::Parse(Minimal("[" + reg + "]", R"([{"step": 1, "verdict": "Accepted"}])"));
  });
  ExpectErrorCode(ErrorCode::kParseError, [&] {
    Scenario::Parse(Minimal("[" + reg + "]", R"([{"step": 0, "verdict": "Maybe"}])"));
  });
  ExpectErrorCode(ErrorCode::kParseError, [] { Scenario::Load(kDir / "does_not_exist.json"); });
}

TEST(ScenarioRunTest, EmptyScenarioIsGenesisOnly) {
  const RunResult r = scenario::Run(Scenario::Load(kDir / "empty.json"));
  EXPECT_EQ(r.report.chain_events, 1u);
  EXPECT_TRUE(r.report.chain_verified);
  EXPECT_TRUE(r.report.conservation);
  EXPECT_EQ(r.ExitCode(), 0);
}

TEST(ScenarioRunTest, BundledScenariosMeetTheirExpectations) {
  int count = 0;
  for (const auto& e : std::filesystem::directory_iterator(kDir)) {
    if (e.path().extension() != ".json") continue;
    ++count;
    const RunResult r = scenario::Run(Scenario::Load(e.path()));
    EXPECT_EQ(r.ExitCode(), 0) << e.path() << ": "
                               << (r.report.mismatches.empty() ? ""
                                                               : r.report.mismatches[0]);
    EXPECT_TRUE(ledger::VerifyChain(r.chain.events()));
  }
  EXPECT_GE(count, 8);
}

TEST(ScenarioRunTest, ReplayIsByteIdentical) {
  const auto s = Scenario::Load(kDir / "attestation_quorum.json");
  const auto dir = std::filesystem::temp_directory_path() / "tiva_scenario_test";
  std::filesystem::remove_all(dir);
  WriteOutputs(scenario::Run(s), dir / "a");
  WriteOutputs(scenario::Run(s), dir / "b");
  for (const char* f : {"chain.log", "evidence.log", "report.json", "audit.txt", "audit.json"}) {
    const std::string a = Slurp(dir / "a" / f);
    EXPECT_FALSE(a.empty()) << f;
    EXPECT_EQ(a, Slurp(dir / "b" / f)) << f;
  }
  EXPECT_TRUE(ledger::VerifyChainText(Slurp(dir / "a" / "chain.log")).ok);
}

TEST(ScenarioRunTest, ZkReplayKeepsVerdicts) {
  const auto s = Scenario::Load(kDir / "happy_mandate.json");
  const RunResult plain = scenario::Run(s);
  const RunResult zk = scenario::Run(s, {.force_zk = true});
  EXPECT_TRUE(zk.report.zk);
  EXPECT_EQ(zk.ExitCode(), 0);
  ASSERT_EQ(plain.report.steps.size(), zk.report.steps.size());
  for (size_t i = 0; i < plain.report.steps.size(); ++i) {
    EXPECT_EQ(plain.report.steps[i].verdict, zk.report.steps[i].verdict) << i;
    EXPECT_EQ(plain.report.steps[i].reason, zk.report.steps[i].reason) << i;
  }
  EXPECT_NE(plain.report.chain_head, zk.report.chain_head);
}

TEST(ScenarioRunTest, UnmetExpectationExitsOne) {
  std::string text = Slurp(kDir / "happy_mandate.json");
  const std::string from = R"("reason": "Quantity")";
  const size_t at = text.find(from);
  ASSERT_NE(at, std::string::npos);
  text.replace(at, from.size(), R"("reason": "Price")");
  const RunResult r = scenario::Run(Scenario::Parse(text));
  EXPECT_EQ(r.ExitCode(), 1);
  EXPECT_EQ(r.report.mismatches.size(), 1u);
  EXPECT_TRUE(r.report.conservation);
}

TEST(ScenarioRunTest, SeedsAreStable) {
  EXPECT_EQ(KeyFromSeed("alice").public_key(), KeyFromSeed("alice").public_key());
  EXPECT_NE(KeyFromSeed("alice").public_key(), KeyFromSeed("alice ").public_key());
  EXPECT_NE(CodeHash("v1"), CodeHash("v2"));
}

}  // namespace
}  // namespace tiva::scenario
