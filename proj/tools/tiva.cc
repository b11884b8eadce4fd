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

// tiva: scenario runner and operator toolbelt.

#include <sodium.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tiva/common/error.h"
#include "tiva/credential/credential.h"
#include "tiva/identity/identity.h"
#include "tiva/ledger/audit.h"
#include "tiva/ledger/event.h"
#include "tiva/ledger/transactions.h"
#include "tiva/mandate/mandate.h"
#include "tiva/scenario/scenario.h"
#include "tiva/zk/compliance.h"

namespace tiva {
namespace {

using crypto::Digest;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Canonical files may end with one newline.
canonical::Value ReadCanonical(const std::string& path) {
  std::string text = ReadFile(path);
  if (!text.empty() && text.back() == '\n') text.pop_back();
  return canonical::Decode(text);
}

void Emit(const std::string& out, const canonical::Value& v) {
  const std::string text = canonical::EncodeString(v) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  f << text;
  if (!f) throw Error(ErrorCode::kNotFound, "cannot write " + out);
}

crypto::KeyPair LoadKey(const std::string& path) {
  const canonical::Value v = ReadCanonical(path);
  auto kp = crypto::KeyPair::FromSeed(canonical::GetBytes(v, "seed"));
  if (canonical::GetString(v, "public_key") != kp.public_key().ToHex()) {
    throw Error(ErrorCode::kMalformedKey, "public key does not match seed");
  }
  return kp;
}

identity::DidRegistry LoadRegistry(const std::vector<std::string>& docs) {
  identity::DidRegistry reg;
  // Users before agents so controllers resolve.
  std::vector<identity::DidDocument> parsed;
  for (const auto& path : docs) {
    parsed.push_back(identity::DidDocument::FromCanonical(ReadCanonical(path)));
  }
  for (const auto& d : parsed) {
    if (d.IsSelfControlled()) reg.Register(d);
  }
  for (const auto& d : parsed) {
    if (!d.IsSelfControlled()) reg.Register(d);
  }
  return reg;
}

Digest ParseDigest(const std::string& hex, const char* what) {
  auto d = Digest::FromHex(hex);
  if (!d) throw Error(ErrorCode::kParseError, std::string(what) + " is not a digest");
  return *d;
}

int RunScenario(const std::string& path, const std::string& out, bool zk, bool verbose) {
  scenario::Scenario s;
  try {
    s = scenario::Scenario::Load(path);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  const scenario::RunResult result = scenario::Run(s, {zk});
  scenario::WriteOutputs(result, out);
  const scenario::RunReport& rep = result.report;
  if (verbose) {
    for (const auto& st : rep.steps) {
      std::printf("%4zu  t=%-8llu %-17s %-8s %s\n", st.index,
                  static_cast<unsigned long long>(st.at), st.action.c_str(),
                  st.verdict.c_str(), st.reason.c_str());
    }
  }
  for (const auto& m : rep.mismatches) std::cerr << "mismatch: " << m << "\n";
  if (!rep.chain_verified) std::cerr << "invariant: chain does not verify\n";
  if (!rep.conservation) std::cerr << "invariant: balances do not conserve\n";
  std::printf("%s: %zu steps, %llu events, head %s, %s\n",
              rep.scenario.empty() ? path.c_str() : rep.scenario.c_str(),
              rep.steps.size(), static_cast<unsigned long long>(rep.chain_events),
              rep.chain_head.ToHex().c_str(),
              result.ExitCode() == 0 ? "ok" : "FAILED");
  return result.ExitCode();
}

int VerifyChainFile(const std::string& path) {
  const std::string text = ReadFile(path);
  const ledger::ChainCheck check = ledger::VerifyChainText(text);
  if (!check.ok) {
    std::cerr << "chain invalid at height "
              << (check.bad_height ? std::to_string(*check.bad_height) : "?") << ": "
              << check.error << "\n";
    return kExitFailure;
  }
  std::printf("ok: %llu events, head %s\n", static_cast<unsigned long long>(check.events),
              check.head.ToHex().c_str());
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"TIVA agent payment protocol tools"};
  app.require_subcommand(1);

  // run
  std::string scenario_path, out_dir;
  bool zk = false, verbose = false;
  auto* run = app.add_subcommand("run", "Replay a scenario file on a fresh chain");
  run->add_option("--scenario", scenario_path, "Scenario file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_flag("--zk", zk, "Use committed mandate prices and zk wallets");
  run->add_flag("--verbose", verbose, "Print every step outcome");

  // keygen
  std::string seed_text, out;
  auto* keygen = app.add_subcommand("keygen", "Create an Ed25519 key file");
  keygen->add_option("--seed", seed_text, "Derive from this seed text (random if absent)");
  keygen->add_option("--out", out, "Key file (stdout if absent)");

  // did
  std::string key_path, controller;
  uint64_t created_at = 0;
  auto* did = app.add_subcommand("did", "Print the DID document for a key");
  did->add_option("--key", key_path, "Key file")->required();
  did->add_option("--controller", controller, "Controlling user DID (agents only)");
  did->add_option("--created-at", created_at, "Logical creation time");
  did->add_option("--out", out, "Document file");

  // issue-vc
  std::vector<std::string> docs, payees, categories;
  std::string subject, currency = "USD";
  uint64_t limit = 0, period = 0, expires_at = 0, now = 0;
  auto* issue = app.add_subcommand("issue-vc", "Issue a delegation credential");
  issue->add_option("--issuer-key", key_path, "User key file")->required();
  issue->add_option("--doc", docs, "DID document files for the registry")->required();
  issue->add_option("--subject", subject, "Agent DID")->required();
  issue->add_option("--limit", limit, "Limit per period in minor units")->required();
  issue->add_option("--period", period, "Period in seconds")->required();
  issue->add_option("--currency", currency, "Currency code");
  issue->add_option("--payee", payees, "Allowed payee (repeatable)");
  issue->add_option("--category", categories, "Allowed category (repeatable)");
  issue->add_option("--expires-at", expires_at, "Expiry time")->required();
  issue->add_option("--now", now, "Issue time");
  issue->add_option("--out", out, "Credential file");

  // sign-mandate
  std::string agent, item, vendor, blinding_seed;
  std::optional<uint64_t> max_price, zk_limit;
  uint64_t max_quantity = 0;
  auto* sign = app.add_subcommand("sign-mandate", "Sign an intent mandate");
  sign->add_option("--user-key", key_path, "User key file")->required();
  sign->add_option("--doc", docs, "DID document files for the registry")->required();
  sign->add_option("--agent", agent, "Agent DID")->required();
  sign->add_option("--item", item, "Item id")->required();
  auto* price_opt = sign->add_option("--max-price", max_price, "Plaintext unit price cap");
  auto* zk_opt = sign->add_option("--zk-limit", zk_limit, "Committed unit price cap");
  price_opt->excludes(zk_opt);
  sign->add_option("--blinding-seed", blinding_seed, "Blinding seed for --zk-limit");
  sign->add_option("--max-quantity", max_quantity, "Quantity cap")->required();
  sign->add_option("--vendor", vendor, "Vendor account")->required();
  sign->add_option("--currency", currency, "Currency code");
  sign->add_option("--expires-at", expires_at, "Expiry time")->required();
  sign->add_option("--now", now, "Signing time");
  sign->add_option("--out", out, "Mandate file");

  // pay
  std::string wallet, payee, category, nonce, mandate_path;
  uint64_t price = 0, quantity = 1;
  bool use_policy = false;
  auto* pay = app.add_subcommand("pay", "Build a signed payment request");
  pay->add_option("--agent-key", key_path, "Agent key file")->required();
  pay->add_option("--wallet", wallet, "Wallet id")->required();
  pay->add_option("--payee", payee, "Payee account")->required();
  pay->add_option("--item", item, "Item id");
  pay->add_option("--price", price, "Unit price in minor units")->required();
  pay->add_option("--quantity", quantity, "Quantity");
  pay->add_option("--category", category, "Merchant category");
  pay->add_option("--currency", currency, "Currency code");
  pay->add_option("--nonce", nonce, "Nonce text")->required();
  auto* m_opt = pay->add_option("--mandate", mandate_path, "Mandate file");
  auto* p_opt = pay->add_flag("--policy", use_policy, "Authorize under the wallet policy");
  m_opt->excludes(p_opt);
  pay->add_option("--zk-limit", zk_limit, "Committed cap of a zk mandate");
  pay->add_option("--blinding-seed", blinding_seed, "Blinding seed of a zk mandate");
  pay->add_option("--out", out, "Request file");

  // revoke
  std::string credential_path;
  auto* revoke = app.add_subcommand("revoke", "Sign a revocation for a credential");
  revoke->add_option("--issuer-key", key_path, "Issuer key file")->required();
  revoke->add_option("--credential", credential_path, "Credential file")->required();
  revoke->add_option("--out", out, "Revocation file");

  // audit
  std::string chain_path, json_out;
  auto* audit = app.add_subcommand("audit", "Audit report for one wallet");
  audit->add_option("--chain", chain_path, "Chain file")->required();
  audit->add_option("--wallet", wallet, "Wallet id")->required();
  audit->add_option("--json", json_out, "Also write canonical bytes here");

  // verify-chain
  auto* verify = app.add_subcommand("verify-chain", "Verify a chain file");
  verify->add_option("file", chain_path, "Chain file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  auto blinding = [&] {
    if (blinding_seed.empty()) {
      throw Error(ErrorCode::kParseError, "--zk-limit needs --blinding-seed");
    }
    return crypto::Scalar::HashToScalar("tiva/cli/blinding", AsBytes(blinding_seed));
  };

  try {
    if (*run) return RunScenario(scenario_path, out_dir, zk, verbose);
    if (*verify) return VerifyChainFile(chain_path);
    if (*keygen) {
      crypto::Seed seed;
      if (keygen->count("--seed")) {
        seed = scenario::KeyFromSeed(seed_text).seed();
      } else {
        randombytes_buf(seed.bytes.data(), seed.bytes.size());
      }
      const auto kp = crypto::KeyPair::FromSeed(seed);
      Emit(out, {{"public_key", kp.public_key().ToHex()}, {"seed", seed.ToHex()}});
      return 0;
    }
    if (*did) {
      const auto kp = LoadKey(key_path);
      const auto doc = controller.empty()
                           ? identity::DidDocument::ForUser(kp.public_key(), created_at)
                           : identity::DidDocument::ForAgent(
                                 kp.public_key(), identity::Did::Parse(controller),
                                 created_at);
      Emit(out, doc.ToCanonical());
      return 0;
    }
    if (*issue) {
      credential::SpendConstraints c;
      c.limit_minor = limit;
      c.limit_period_seconds = period;
      c.currency = currency;
      c.allowed_payees = {payees.begin(), payees.end()};
      c.allowed_categories = {categories.begin(), categories.end()};
      c.expires_at = expires_at;
      const auto cred = credential::IssueCredential(
          LoadKey(key_path), identity::Did::Parse(subject), c, now, LoadRegistry(docs));
      Emit(out, cred.ToCanonical());
      return 0;
    }
    if (*sign) {
      mandate::MandateTerms t;
      t.agent = identity::Did::Parse(agent);
      t.item_id = item;
      t.max_quantity = max_quantity;
      t.vendor_account = vendor;
      t.currency = currency;
      t.expires_at = expires_at;
      if (zk_limit) {
        t.price_limit_commitment = zk::Commitment::Commit(*zk_limit, blinding());
      } else {
        t.max_unit_price_minor = max_price;
      }
      Emit(out, mandate::SignMandate(LoadKey(key_path), t, now, LoadRegistry(docs))
                    .ToCanonical());
      return 0;
    }
    if (*pay) {
      const auto kp = LoadKey(key_path);
      ledger::PaymentRequest req;
      req.wallet_id = ParseDigest(wallet, "--wallet");
      req.agent = identity::Did::FromPublicKey(kp.public_key());
      req.payee = payee;
      req.item_id = item;
      req.unit_price_minor = price;
      req.quantity = quantity;
      req.category = category;
      req.currency = currency;
      req.nonce = crypto::Hash("tiva/cli/nonce", nonce);
      if (use_policy) {
        req.intent_proof = ledger::IntentProof::Policy();
      } else if (!mandate_path.empty()) {
        const auto m = mandate::IntentMandate::FromCanonical(ReadCanonical(mandate_path));
        std::optional<zk::RangeProof> proof;
        if (m.terms.IsZk()) {
          if (!zk_limit) throw Error(ErrorCode::kParseError, "zk mandate needs --zk-limit");
          proof = zk::ProvePriceWithinLimit(
              *zk_limit, blinding(), price,
              mandate::PriceProofContext(m.mandate_id, req.nonce));
        }
        req.intent_proof = ledger::IntentProof::Mandate(m, proof);
      }
      req.SignWith(kp);
      Emit(out, req.ToCanonical());
      return 0;
    }
    if (*revoke) {
      const auto cred =
          credential::DelegationCredential::FromCanonical(ReadCanonical(credential_path));
      Emit(out, ledger::RevokeTx::Sign(LoadKey(key_path), cred.credential_id).ToCanonical());
      return 0;
    }
    if (*audit) {
      const std::string text = ReadFile(chain_path);
      const ledger::ChainCheck check = ledger::VerifyChainText(text);
      if (!check.ok) {
        std::cerr << "chain invalid at height "
                  << (check.bad_height ? std::to_string(*check.bad_height) : "?") << ": "
                  << check.error << "\n";
        return kExitFailure;
      }
      const Digest id = ParseDigest(wallet, "--wallet");
      const auto rows = ledger::AuditReport(ledger::ParseChain(text), id);
      std::cout << ledger::RenderAuditTable(id, rows);
      if (!json_out.empty()) Emit(json_out, ledger::AuditToCanonical(id, rows));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace tiva

int main(int argc, char** argv) {
  if (sodium_init() < 0) return 3;
  return tiva::Main(argc, argv);
}
