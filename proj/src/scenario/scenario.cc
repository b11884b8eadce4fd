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

#include <fstream>
#include <set>
#include <sstream>

#include "tiva/common/error.h"
#include "tiva/ledger/audit.h"
#include "tiva/zk/compliance.h"

namespace tiva::scenario {

namespace {

using canonical::Value;
using crypto::Digest;
using crypto::KeyPair;
using identity::Did;

[[noreturn]] void Bad(const std::string& what) {
  throw Error(ErrorCode::kParseError, what);
}

std::string Str(const Value& obj, std::string_view key) {
  return canonical::GetString(obj, key);
}

std::string OptStr(const Value& obj, std::string_view key, std::string fallback) {
  return canonical::Has(obj, key) ? Str(obj, key) : std::move(fallback);
}

uint64_t Uint(const Value& obj, std::string_view key) {
  return canonical::GetUint(obj, key);
}

std::optional<uint64_t> OptUint(const Value& obj, std::string_view key) {
  if (!canonical::Has(obj, key)) return std::nullopt;
  return Uint(obj, key);
}

bool Flag(const Value& obj, std::string_view key) {
  return OptUint(obj, key).value_or(0) != 0;
}

// Unordered lists are fine in scenario files.
std::set<std::string> StrSet(const Value& obj, std::string_view key) {
  std::set<std::string> out;
  if (!canonical::Has(obj, key)) return out;
  const Value& v = canonical::Field(obj, key);
  if (!v.is_array()) Bad("'" + std::string(key) + "' must be a list");
  for (const auto& item : v) {
    if (!item.is_string()) Bad("'" + std::string(key) + "' must hold strings");
    out.insert(item.get<std::string>());
  }
  return out;
}

const std::set<std::string>& Actions() {
  static const std::set<std::string> kActions = {
      "register", "issue_credential", "deploy_policy", "sign_mandate",
      "create_wallet", "deposit", "pay", "revoke", "update_whitelist"};
  return kActions;
}

enum class Ref { kActor, kCredential, kPolicy, kMandate, kWallet };

struct RefRule {
  std::string_view action;
  std::string_view key;
  Ref kind;
  bool defines;
  bool required;
};

constexpr RefRule kRefRules[] = {
    {"register", "actor", Ref::kActor, false, true},
    {"issue_credential", "issuer", Ref::kActor, false, true},
    {"issue_credential", "subject", Ref::kActor, false, true},
    {"issue_credential", "name", Ref::kCredential, true, true},
    {"deploy_policy", "owner", Ref::kActor, false, true},
    {"deploy_policy", "agent", Ref::kActor, false, true},
    {"deploy_policy", "name", Ref::kPolicy, true, true},
    {"sign_mandate", "user", Ref::kActor, false, true},
    {"sign_mandate", "agent", Ref::kActor, false, true},
    {"sign_mandate", "forge_with", Ref::kActor, false, false},
    {"sign_mandate", "name", Ref::kMandate, true, true},
    {"create_wallet", "owner", Ref::kActor, false, true},
    {"create_wallet", "agent", Ref::kActor, false, true},
    {"create_wallet", "signer", Ref::kActor, false, false},
    {"create_wallet", "credential", Ref::kCredential, false, true},
    {"create_wallet", "policy", Ref::kPolicy, false, false},
    {"create_wallet", "name", Ref::kWallet, true, true},
    {"deposit", "wallet", Ref::kWallet, false, true},
    {"deposit", "signer", Ref::kActor, false, false},
    {"pay", "wallet", Ref::kWallet, false, false},
    {"pay", "signer", Ref::kActor, false, false},
    {"pay", "agent", Ref::kActor, false, false},
    {"pay", "mandate", Ref::kMandate, false, false},
    {"revoke", "credential", Ref::kCredential, false, true},
    {"revoke", "issuer", Ref::kActor, false, false},
    {"update_whitelist", "wallet", Ref::kWallet, false, true},
    {"update_whitelist", "signer", Ref::kActor, false, false},
};

void ParseActors(const Value& v, Scenario& s) {
  if (!v.is_object()) Bad("'actors' must be a map");
  auto add = [&](const std::string& name, Actor a) {
    a.name = name;
    if (a.seed.empty()) Bad("actor '" + name + "' has an empty seed");
    if (!s.actors.emplace(name, a).second) Bad("duplicate actor '" + name + "'");
  };
  for (const auto& [group, members] : v.items()) {
    if (group == "manufacturer") {
      Actor a;
      a.role = Role::kManufacturer;
      a.seed = Str(members, "seed");
      add("manufacturer", a);
      continue;
    }
    Role role;
    if (group == "users") {
      role = Role::kUser;
    } else if (group == "agents") {
      role = Role::kAgent;
    } else if (group == "enclaves") {
      role = Role::kEnclave;
    } else {
      Bad("unknown actor group '" + group + "'");
    }
    if (!members.is_object()) Bad("actor group '" + group + "' must be a map");
    for (const auto& [name, entry] : members.items()) {
      Actor a;
      a.role = role;
      a.seed = Str(entry, "seed");
      if (role == Role::kAgent) a.controller = Str(entry, "controller");
      if (role == Role::kEnclave) {
        a.code = Str(entry, "code");
        a.forged_endorsement = Flag(entry, "forged_endorsement");
      }
      add(name, a);
    }
  }
  for (const auto& [name, a] : s.actors) {
    if (a.role != Role::kAgent) continue;
    auto it = s.actors.find(a.controller);
    if (it == s.actors.end() || it->second.role != Role::kUser) {
      Bad("agent '" + name + "' needs a user controller");
    }
  }
}

void CheckReferences(const Scenario& s) {
  std::map<Ref, std::set<std::string>> defined;
  auto need = [&](Ref kind, const std::string& name, size_t i) {
    const bool ok = kind == Ref::kActor ? s.actors.contains(name)
                                        : defined[kind].contains(name);
    if (!ok) Bad("step " + std::to_string(i) + " references undefined '" + name + "'");
  };
  for (size_t i = 0; i < s.steps.size(); ++i) {
    const Step& st = s.steps[i];
    for (const RefRule& r : kRefRules) {
      if (r.action != st.action) continue;
      if (!canonical::Has(st.params, r.key)) {
        if (r.required) {
          Bad("step " + std::to_string(i) + " (" + st.action + ") lacks '" +
              std::string(r.key) + "'");
        }
        continue;
      }
      const std::string name = Str(st.params, r.key);
      if (r.defines) {
        defined[r.kind].insert(name);
      } else {
        need(r.kind, name, i);
      }
    }
    if (st.action == "pay" && !canonical::Has(st.params, "wallet") &&
        !canonical::Has(st.params, "wallet_id")) {
      Bad("step " + std::to_string(i) + " (pay) needs 'wallet' or 'wallet_id'");
    }
    if (st.action == "create_wallet" && canonical::Has(st.params, "attestation")) {
      for (const auto& e : StrSet(canonical::Field(st.params, "attestation"), "enclaves")) {
        need(Ref::kActor, e, i);
      }
    }
    if (st.action == "pay" && canonical::Has(st.params, "quotes")) {
      const Value& qs = canonical::Field(st.params, "quotes");
      if (!qs.is_array()) Bad("'quotes' must be a list");
      for (const auto& q : qs) need(Ref::kActor, Str(q, "enclave"), i);
    }
  }
}

}  // namespace

KeyPair KeyFromSeed(std::string_view seed) {
  return KeyPair::FromSeed(crypto::Hash("tiva/seed", seed).span());
}

Digest CodeHash(std::string_view code) { return crypto::Hash("tiva/code", code); }

Scenario Scenario::Parse(std::string_view text) {
  const Value v = canonical::DecodeRelaxed(text);
  if (!v.is_object()) Bad("scenario must be a map");
  if (Uint(v, "version") != kScenarioVersion) Bad("unsupported scenario version");
  Scenario s;
  s.name = OptStr(v, "name", "");
  if (canonical::Has(v, "actors")) ParseActors(canonical::Field(v, "actors"), s);
  const Value& steps = canonical::Field(v, "steps");
  if (!steps.is_array()) Bad("'steps' must be a list");
  uint64_t last_at = 0;
  for (const auto& item : steps) {
    Step st;
    st.at = Uint(item, "at");
    st.action = Str(item, "action");
    if (!Actions().contains(st.action)) Bad("unknown action '" + st.action + "'");
    if (st.at < last_at) Bad("step times must not decrease");
    last_at = st.at;
    st.params = canonical::Has(item, "params") ? canonical::Field(item, "params")
                                               : Value::object();
    if (!st.params.is_object()) Bad("'params' must be a map");
    s.steps.push_back(std::move(st));
  }
  if (canonical::Has(v, "expectations")) {
    const Value& ex = canonical::Field(v, "expectations");
    if (!ex.is_array()) Bad("'expectations' must be a list");
    for (const auto& e : ex) {
      const uint64_t idx = Uint(e, "step");
      if (idx >= s.steps.size()) Bad("expectation for missing step " + std::to_string(idx));
      Expectation x;
      x.verdict = Str(e, "verdict");
      if (x.verdict != "Accepted" && x.verdict != "Rejected") {
        Bad("verdict must be Accepted or Rejected");
      }
      if (canonical::Has(e, "reason")) x.reason = Str(e, "reason");
      if (s.steps[idx].expect) Bad("two expectations for step " + std::to_string(idx));
      s.steps[idx].expect = x;
    }
  }
  CheckReferences(s);
  return s;
}

Scenario Scenario::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Bad("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str());
}

namespace {

struct MandateEntry {
  mandate::IntentMandate mandate;
  std::optional<uint64_t> zk_limit;
  crypto::Scalar blinding;
};

struct WalletEntry {
  Digest id;
  std::string owner;
  std::string agent;
  std::string currency;
};

class Runner {
 public:
  Runner(const Scenario& s, const RunOptions& o) : s_(s), o_(o) {
    for (const auto& [name, a] : s.actors) keys_.emplace(name, KeyFromSeed(a.seed));
  }

  RunResult Run() {
    RunResult result;
    RunReport& rep = result.report;
    rep.scenario = s_.name;
    rep.zk = o_.force_zk;
    for (size_t i = 0; i < s_.steps.size(); ++i) {
      const Step& st = s_.steps[i];
      StepOutcome out;
      out.index = i;
      out.at = st.at;
      out.action = st.action;
      const size_t events_before = chain_.events().size();
      try {
        Execute(st, i, out);
        if (out.verdict.empty()) out.verdict = "Accepted";
      } catch (const Error& e) {
        out.verdict = "Rejected";
        out.reason = ErrorCodeName(e.code());
        out.detail = e.what();
      }
      if (chain_.events().size() > events_before) {
        out.height = chain_.events().back().height;
      }
      Compare(st, out, rep.mismatches);
      rep.steps.push_back(std::move(out));
    }

    const std::string text = ledger::SerializeChain(chain_.events());
    const ledger::ChainCheck check = ledger::VerifyChainText(text);
    rep.chain_verified = check.ok;
    rep.chain_head = chain_.events().back().event_hash;
    rep.chain_events = chain_.events().size();
    rep.conservation = Conserves();
    for (const auto& [name, w] : wallets_) {
      rep.wallets[name] = {w.id, chain_.FindWallet(w.id)->balance_minor};
    }
    result.chain = std::move(chain_);
    return result;
  }

 private:
  static void Compare(const Step& st, const StepOutcome& out,
                      std::vector<std::string>& mismatches) {
    const std::string where = "step " + std::to_string(out.index) + " (" + st.action + ")";
    if (!st.expect) {
      if (st.action != "pay" && out.verdict != "Accepted") {
        mismatches.push_back(where + ": unexpected " + out.reason);
      }
      return;
    }
    const std::string got = out.verdict + (out.reason.empty() ? "" : "(" + out.reason + ")");
    const bool verdict_ok = out.verdict == st.expect->verdict;
    const bool reason_ok = !st.expect->reason || *st.expect->reason == out.reason;
    if (!verdict_ok || !reason_ok) {
      mismatches.push_back(where + ": expected " + st.expect->verdict +
                           (st.expect->reason ? "(" + *st.expect->reason + ")" : "") +
                           ", got " + got);
    }
  }

  // Independent of the wallet state: sums deposits and accepted payments in
  // the log, then compares with both the state and the audit helper.
  bool Conserves() const {
    std::map<Digest, __int128> expected;
    for (const ledger::LedgerEvent& e : chain_.events()) {
      if (e.kind == ledger::EventKind::kWalletCreated) {
        expected[Digest::FromHex(Str(e.payload, "wallet_id")).value()] += 0;
      } else if (e.kind == ledger::EventKind::kDeposited) {
        expected[Digest::FromHex(Str(e.payload, "wallet_id")).value()] +=
            Uint(e.payload, "amount_minor");
      } else if (e.kind == ledger::EventKind::kPaymentAccepted) {
        expected[Digest::FromHex(Str(e.payload, "wallet_id")).value()] -=
            Uint(e.payload, "amount_minor");
      }
    }
    const auto from_audit = ledger::BalancesFromEvents(chain_.events());
    if (expected.size() != chain_.wallets().size()) return false;
    for (const auto& [id, w] : chain_.wallets()) {
      auto it = expected.find(id);
      if (it == expected.end() || it->second != static_cast<__int128>(w.balance_minor)) {
        return false;
      }
      if (from_audit.at(id) != w.balance_minor) return false;
    }
    return true;
  }

  const KeyPair& Key(const std::string& actor) const { return keys_.at(actor); }
  Did DidOf(const std::string& actor) const {
    return Did::FromPublicKey(Key(actor).public_key());
  }

  template <typename M>
  const typename M::mapped_type& Lookup(const M& m, const std::string& name,
                                        const char* what) const {
    auto it = m.find(name);
    if (it == m.end()) {
      throw Error(ErrorCode::kNotFound, std::string(what) + " '" + name + "' was not created");
    }
    return it->second;
  }

  attestation::EnclaveIdentity Enclave(const std::string& name) const {
    const Actor& a = s_.actors.at(name);
    const Digest code = CodeHash(a.code);
    if (a.forged_endorsement) {
      const KeyPair fake_root = KeyFromSeed("forged-root:" + a.seed);
      return attestation::EnclaveIdentity::Endorse(fake_root, Key(name), code);
    }
    auto root = s_.actors.find("manufacturer");
    if (root == s_.actors.end()) {
      throw Error(ErrorCode::kParseError, "enclaves need a manufacturer actor");
    }
    return attestation::EnclaveIdentity::Endorse(Key("manufacturer"), Key(name), code);
  }

  void Execute(const Step& st, size_t index, StepOutcome& out) {
    const Value& p = st.params;
    const uint64_t at = st.at;
    if (st.action == "register") {
      const std::string name = Str(p, "actor");
      const Actor& a = s_.actors.at(name);
      identity::DidDocument doc;
      if (a.role == Role::kUser) {
        doc = identity::DidDocument::ForUser(Key(name).public_key(), at);
      } else if (a.role == Role::kAgent) {
        doc = identity::DidDocument::ForAgent(Key(name).public_key(),
                                              DidOf(a.controller), at);
      } else {
        throw Error(ErrorCode::kBadDocument, "only users and agents have DIDs");
      }
      out.detail = doc.did.ToString();
      if (!chain_.RegisterDid(doc, at)) out.detail += " (already registered)";
    } else if (st.action == "issue_credential") {
      credential::SpendConstraints c;
      c.limit_minor = Uint(p, "limit_minor");
      c.limit_period_seconds = Uint(p, "period_seconds");
      c.currency = Str(p, "currency");
      c.allowed_payees = StrSet(p, "payees");
      c.allowed_categories = StrSet(p, "categories");
      c.expires_at = Uint(p, "expires_at");
      auto cred = credential::IssueCredential(Key(Str(p, "issuer")),
                                              DidOf(Str(p, "subject")), c, at,
                                              chain_.dids());
      chain_.AnchorCredential(cred, at);
      out.detail = cred.credential_id.ToHex();
      credentials_[Str(p, "name")] = {cred, Str(p, "issuer")};
    } else if (st.action == "deploy_policy") {
      policy::PolicyRules r;
      r.per_period_limit_minor = Uint(p, "per_period_limit_minor");
      r.period_seconds = Uint(p, "period_seconds");
      r.currency = Str(p, "currency");
      r.allowed_categories = StrSet(p, "categories");
      r.allowed_payees = StrSet(p, "payees");
      r.per_tx_limit_minor = OptUint(p, "per_tx_limit_minor");
      const Digest id = chain_.DeployPolicy(
          ledger::PolicyDeploymentTx::Sign(Key(Str(p, "owner")), DidOf(Str(p, "agent")), r),
          at);
      out.detail = id.ToHex();
      policies_[Str(p, "name")] = id;
    } else if (st.action == "sign_mandate") {
      SignMandate(p, at, out);
    } else if (st.action == "create_wallet") {
      CreateWallet(p, at, out);
    } else if (st.action == "deposit") {
      const WalletEntry& w = Lookup(wallets_, Str(p, "wallet"), "wallet");
      const std::string signer = OptStr(p, "signer", w.owner);
      const uint64_t seq = OptUint(p, "seq").value_or(chain_.FindWallet(w.id)->owner_seq);
      chain_.Deposit(ledger::DepositTx::Sign(Key(signer), w.id, Uint(p, "amount_minor"), seq),
                     at);
    } else if (st.action == "update_whitelist") {
      const WalletEntry& w = Lookup(wallets_, Str(p, "wallet"), "wallet");
      std::set<Digest> codes;
      for (const auto& c : StrSet(p, "code")) codes.insert(CodeHash(c));
      chain_.UpdateWhitelist(
          ledger::WhitelistUpdateTx::Sign(Key(OptStr(p, "signer", w.owner)), w.id, codes,
                                          chain_.FindWallet(w.id)->owner_seq),
          at);
    } else if (st.action == "revoke") {
      const auto& [cred, issuer] = Lookup(credentials_, Str(p, "credential"), "credential");
      const std::string signer = OptStr(p, "issuer", issuer);
      if (!chain_.Revoke(ledger::RevokeTx::Sign(Key(signer), cred.credential_id), at)) {
        out.detail = "already revoked";
      }
    } else if (st.action == "pay") {
      Pay(p, index, at, out);
    }
  }

  void SignMandate(const Value& p, uint64_t at, StepOutcome& out) {
    const std::string name = Str(p, "name");
    const std::string user = Str(p, "user");
    mandate::MandateTerms t;
    t.agent = DidOf(Str(p, "agent"));
    t.item_id = Str(p, "item_id");
    t.max_quantity = Uint(p, "max_quantity");
    t.vendor_account = Str(p, "vendor");
    t.currency = Str(p, "currency");
    t.expires_at = Uint(p, "expires_at");
    MandateEntry e;
    std::optional<uint64_t> limit = OptUint(p, "zk_price_limit");
    if (!limit && o_.force_zk) limit = OptUint(p, "max_unit_price_minor");
    if (limit) {
      e.zk_limit = limit;
      e.blinding = crypto::Scalar::HashToScalar(
          "tiva/scenario/blinding", AsBytes(s_.actors.at(user).seed + "/" + name));
      t.price_limit_commitment = zk::Commitment::Commit(*limit, e.blinding);
    } else {
      t.max_unit_price_minor = OptUint(p, "max_unit_price_minor");
    }
    e.mandate = mandate::SignMandate(Key(user), t, at, chain_.dids());
    if (canonical::Has(p, "forge_with")) {
      e.mandate.signature =
          Key(Str(p, "forge_with")).Sign(canonical::Encode(e.mandate.Body()));
    }
    if (auto q = OptUint(p, "tamper_max_quantity")) e.mandate.terms.max_quantity = *q;
    out.detail = e.mandate.mandate_id.ToHex();
    mandates_[name] = std::move(e);
  }

  void CreateWallet(const Value& p, uint64_t at, StepOutcome& out) {
    const std::string owner = Str(p, "owner");
    const std::string agent = Str(p, "agent");
    const auto& [cred, issuer] = Lookup(credentials_, Str(p, "credential"), "credential");
    ledger::WalletConfig c;
    c.currency = OptStr(p, "currency", cred.constraints.currency);
    c.allow_mandate_override = Flag(p, "allow_mandate_override");
    if (canonical::Has(p, "policy")) {
      c.policy_id = Lookup(policies_, Str(p, "policy"), "policy");
    }
    c.zk_mode = Flag(p, "zk_mode") || (o_.force_zk && !c.policy_id);
    if (canonical::Has(p, "attestation")) {
      const Value& a = canonical::Field(p, "attestation");
      attestation::AttestationPolicy ap;
      if (s_.actors.contains("manufacturer")) {
        ap.root_key = Key("manufacturer").public_key();
      }
      ap.required_quotes_k = static_cast<uint32_t>(Uint(a, "k"));
      for (const auto& e : StrSet(a, "enclaves")) ap.enclave_set.push_back(Key(e).public_key());
      for (const auto& code : StrSet(a, "whitelist")) {
        ap.whitelisted_code_hashes.insert(CodeHash(code));
      }
      ap.freshness_window_seconds =
          OptUint(a, "freshness_seconds").value_or(attestation::kDefaultFreshnessSeconds);
      c.attestation = ap;
    }
    const std::string signer = OptStr(p, "signer", owner);
    auto tx = ledger::CreateWalletTx::Sign(Key(signer), DidOf(agent), cred, c);
    tx.owner = DidOf(owner);  // a different signer yields a bad signature
    const Digest id = chain_.CreateWallet(tx, at);
    out.detail = id.ToHex();
    wallets_[Str(p, "name")] = {id, owner, agent, c.currency};
  }

  void Pay(const Value& p, size_t index, uint64_t at, StepOutcome& out) {
    ledger::PaymentRequest req;
    std::string agent, currency = "USD";
    if (canonical::Has(p, "wallet")) {
      const WalletEntry& w = Lookup(wallets_, Str(p, "wallet"), "wallet");
      req.wallet_id = w.id;
      agent = w.agent;
      currency = w.currency;
    } else {
      auto id = Digest::FromHex(Str(p, "wallet_id"));
      if (!id) throw Error(ErrorCode::kParseError, "wallet_id is not a digest");
      req.wallet_id = *id;
      agent = Str(p, "signer");
    }
    const std::string signer = OptStr(p, "signer", agent);
    req.agent = DidOf(OptStr(p, "agent", signer));
    req.payee = Str(p, "payee");
    req.item_id = OptStr(p, "item_id", "");
    req.unit_price_minor = Uint(p, "unit_price_minor");
    req.quantity = OptUint(p, "quantity").value_or(1);
    req.category = OptStr(p, "category", "");
    req.currency = OptStr(p, "currency", currency);
    req.nonce = crypto::Hash("tiva/scenario/nonce",
                             OptStr(p, "nonce", "step-" + std::to_string(index)));

    const ledger::WalletState* ws = chain_.FindWallet(req.wallet_id);
    std::string intent = OptStr(p, "intent", "");
    if (intent.empty()) {
      intent = canonical::Has(p, "mandate")
                   ? "mandate"
                   : (ws && ws->config.policy_id ? "policy" : "none");
    }
    if (intent == "policy") {
      req.intent_proof = ledger::IntentProof::Policy();
    } else if (intent == "mandate") {
      const MandateEntry& m = Lookup(mandates_, Str(p, "mandate"), "mandate");
      std::optional<zk::RangeProof> proof;
      if (m.zk_limit) {
        const uint64_t proved = std::min(req.unit_price_minor, *m.zk_limit);
        proof = zk::ProvePriceWithinLimit(
            *m.zk_limit, m.blinding, proved,
            mandate::PriceProofContext(m.mandate.mandate_id, req.nonce));
      }
      req.intent_proof = ledger::IntentProof::Mandate(m.mandate, proof);
    } else if (intent != "none") {
      throw Error(ErrorCode::kParseError, "intent must be mandate, policy or none");
    }

    req.SignWith(Key(signer));
    if (canonical::Has(p, "quotes")) {
      for (const auto& q : canonical::Field(p, "quotes")) {
        const Digest bound = OptStr(q, "binding", "request") == "request"
                                 ? req.ComputeDigest()
                                 : crypto::Hash("tiva/scenario/other", "request");
        auto quote = attestation::IssueQuote(Enclave(Str(q, "enclave")), bound,
                                             OptUint(q, "issued_at").value_or(at));
        if (Flag(q, "tamper_signature")) quote.quote_sig.bytes[0] ^= 1;
        req.quotes.push_back(quote);
      }
    }

    const ledger::Receipt r = chain_.SubmitPayment(req, at);
    out.verdict = r.accepted ? "Accepted" : "Rejected";
    if (!r.accepted) out.reason = ledger::PaymentReasonName(*r.reason);
    if (r.intent_proof_digest) out.detail = r.intent_proof_digest->ToHex();
  }

  const Scenario& s_;
  const RunOptions& o_;
  std::map<std::string, KeyPair> keys_;
  ledger::Chain chain_;
  std::map<std::string, std::pair<credential::DelegationCredential, std::string>> credentials_;
  std::map<std::string, Digest> policies_;
  std::map<std::string, MandateEntry> mandates_;
  std::map<std::string, WalletEntry> wallets_;
};

void WriteFile(const std::filesystem::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(ErrorCode::kNotFound, "cannot write " + path.string());
}

}  // namespace

canonical::Value RunReport::ToCanonical() const {
  Value steps_v = Value::array();
  for (const StepOutcome& s : steps) {
    Value o = {{"action", s.action},
               {"at", s.at},
               {"detail", s.detail},
               {"index", s.index},
               {"reason", s.reason},
               {"verdict", s.verdict}};
    if (s.height) o["height"] = *s.height;
    steps_v.push_back(std::move(o));
  }
  Value wallets_v = Value::array();
  for (const auto& [name, w] : wallets) {
    wallets_v.push_back(
        {{"balance_minor", w.second}, {"name", name}, {"wallet_id", w.first.ToHex()}});
  }
  Value mism = Value::array();
  for (const auto& m : mismatches) mism.push_back(m);
  return {{"chain_events", chain_events},
          {"chain_head", chain_head.ToHex()},
          {"chain_verified", chain_verified ? 1 : 0},
          {"conservation", conservation ? 1 : 0},
          {"mismatches", mism},
          {"scenario", scenario},
          {"steps", steps_v},
          {"wallets", wallets_v},
          {"zk", zk ? 1 : 0}};
}

int RunResult::ExitCode() const {
  if (!report.chain_verified || !report.conservation) return 3;
  return report.mismatches.empty() ? 0 : 1;
}

RunResult Run(const Scenario& scenario, const RunOptions& options) {
  return Runner(scenario, options).Run();
}

void WriteOutputs(const RunResult& result, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto& events = result.chain.events();
  WriteFile(out_dir / "chain.log", ledger::SerializeChain(events));
  WriteFile(out_dir / "evidence.log", ledger::SerializeEvidence(result.chain.evidence()));
  WriteFile(out_dir / "report.json",
            canonical::EncodeString(result.report.ToCanonical()) + "\n");
  std::string table;
  Value audits = Value::array();
  for (const auto& [name, w] : result.report.wallets) {
    const auto rows = ledger::AuditReport(events, w.first);
    table += "# wallet " + name + "\n" + ledger::RenderAuditTable(w.first, rows) + "\n";
    Value a = ledger::AuditToCanonical(w.first, rows);
    a["name"] = name;
    audits.push_back(std::move(a));
  }
  WriteFile(out_dir / "audit.txt", table);
  WriteFile(out_dir / "audit.json",
            canonical::EncodeString({{"wallets", audits}}) + "\n");
}

}  // namespace tiva::scenario
