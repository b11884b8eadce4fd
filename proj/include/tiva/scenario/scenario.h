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

#pragma once

// Declarative scenario files and the runner that replays them on a fresh
// chain. Everything is derived from the file: keys come from named seeds and
// time is the per-step `at`, so a run is a pure function of its input.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tiva/crypto/canonical.h"
#include "tiva/crypto/sign.h"
#include "tiva/ledger/chain.h"

namespace tiva::scenario {

inline constexpr uint64_t kScenarioVersion = 1;

enum class Role { kUser, kAgent, kEnclave, kManufacturer };

struct Actor {
  std::string name;
  Role role = Role::kUser;
  std::string seed;
  std::string controller;  // agents
  std::string code;        // enclaves: the measurement they run
  bool forged_endorsement = false;  // enclaves endorsed by a non-root key
};

struct Expectation {
  std::string verdict;  // "Accepted" or "Rejected"
  std::optional<std::string> reason;
};

struct Step {
  uint64_t at = 0;
  std::string action;
  canonical::Value params;
  std::optional<Expectation> expect;
};

struct Scenario {
  std::string name;
  std::map<std::string, Actor> actors;
  std::vector<Step> steps;

  // Accepts any JSON whitespace. Validates version, actors, action names,
  // monotone time and that every referenced actor or object is defined
  // before use. Throws kParseError.
  static Scenario Parse(std::string_view text);
  static Scenario Load(const std::filesystem::path& path);
};

// Ed25519 key from a scenario seed string: seed = hash("tiva/seed", text).
crypto::KeyPair KeyFromSeed(std::string_view seed);
// Enclave measurement for a code label.
crypto::Digest CodeHash(std::string_view code);

struct RunOptions {
  // Turn plaintext mandates into committed ones and non-policy wallets into
  // zk wallets; pay steps then attach price proofs.
  bool force_zk = false;
};

struct StepOutcome {
  size_t index = 0;
  uint64_t at = 0;
  std::string action;
  std::string verdict;
  std::string reason;  // empty when accepted
  std::optional<uint64_t> height;  // event emitted by the step
  std::string detail;
};

struct RunReport {
  std::string scenario;
  bool zk = false;
  std::vector<StepOutcome> steps;
  std::vector<std::string> mismatches;
  crypto::Digest chain_head;
  uint64_t chain_events = 0;
  bool chain_verified = false;
  bool conservation = false;
  std::map<std::string, std::pair<crypto::Digest, uint64_t>> wallets;

  canonical::Value ToCanonical() const;
};

struct RunResult {
  RunReport report;
  ledger::Chain chain;

  // 0 all expectations met, 1 expectation mismatch, 3 internal invariant
  // violation (chain does not verify or balances do not conserve).
  int ExitCode() const;
};

RunResult Run(const Scenario& scenario, const RunOptions& options = {});

// chain.log, evidence.log, report.json, audit.txt and audit.json.
void WriteOutputs(const RunResult& result, const std::filesystem::path& out_dir);

}  // namespace tiva::scenario
