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

// Differential harness for the payment pipeline. Requests are generated as
// plain descriptors, materialized into signed requests, submitted to a real
// chain, and compared with a straight-line model written from the rules
// alone. The model never calls into the ledger, mandate or policy code.

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wallet_fixture.h"

namespace tiva::testing {

enum class QuoteKind { kValid, kNone, kStale, kWrongBinding, kBadCode, kBadSig };
enum class ZkProofKind { kHonest, kForLimit, kStale, kMissing };
enum class IntentKind { kNone, kMandate, kPolicy };

// What the model knows about a mandate in the pool.
struct ModelMandate {
  bool zk = false;
  bool genuine = true;      // signature by the wallet owner
  bool for_agent = true;    // terms name the wallet's agent
  std::string item, vendor, currency;
  uint64_t max_price = 0;   // plaintext cap, or the committed value
  uint64_t max_qty = 0;
  uint64_t expires_at = 0;
};

struct ModelRequest {
  uint64_t at = 0;
  bool known_wallet = true;
  int nonce = 0;
  bool signed_by_agent = true;
  bool names_agent = true;
  uint64_t price = 0;
  uint64_t qty = 0;
  std::string payee, category, currency, item;
  IntentKind intent = IntentKind::kNone;
  int mandate = 0;
  bool proof_attached = false;
  ZkProofKind zk_proof = ZkProofKind::kHonest;
  QuoteKind quote = QuoteKind::kValid;
};

struct ModelWallet {
  // configuration
  bool zk = false, policy = false, override_flag = false, attested = false;
  uint64_t cred_limit = 0, cred_period = 1, cred_expires = 0;
  std::set<std::string> cred_payees, cred_categories;
  uint64_t pol_limit = 0, pol_period = 1;
  std::optional<uint64_t> pol_per_tx;
  std::set<std::string> pol_payees, pol_categories;
  std::vector<ModelMandate> mandates;
  // state
  bool revoked = false;
  uint64_t balance = 0;
  std::set<int> nonces;
  std::map<int, uint64_t> used_qty;
  uint64_t cred_window = UINT64_MAX, cred_spent = 0;
  uint64_t pol_window = UINT64_MAX, pol_spent = 0;
};

// Returns "" for acceptance (and applies it), or the rejection reason name.
inline std::string ModelSubmit(ModelWallet& w, const ModelRequest& r) {
  using u128 = unsigned __int128;
  if (!r.known_wallet) return "UnknownWallet";
  if (w.nonces.count(r.nonce)) return "NonceReplay";
  if (!r.signed_by_agent || !r.names_agent) return "BadAgentSignature";
  if (w.revoked) return "Revoked";
  if (r.at > w.cred_expires) return "CredentialExpired";
  const u128 wide = static_cast<u128>(r.price) * r.qty;
  if (wide > UINT64_MAX) return "AmountOverflow";
  const uint64_t amount = static_cast<uint64_t>(wide);
  const uint64_t cred_now = r.at / w.cred_period;
  const u128 cred_before = cred_now == w.cred_window ? w.cred_spent : 0;
  if (cred_before + amount > w.cred_limit) return "CredentialLimit";
  if (r.currency != "USD") return "CredentialCurrency";
  if (!w.cred_payees.empty() && !w.cred_payees.count(r.payee)) {
    return "CredentialPayee";
  }
  if (!w.cred_categories.empty() && !w.cred_categories.count(r.category)) {
    return "CredentialCategory";
  }

  const uint64_t pol_now = r.at / w.pol_period;
  const u128 pol_before = pol_now == w.pol_window ? w.pol_spent : 0;
  const ModelMandate* m = nullptr;
  if (r.intent == IntentKind::kNone) return "NoIntentProof";
  if (r.intent == IntentKind::kPolicy) {
    if (!w.policy) return "IntentModeMismatch";
    // The caller is the wallet agent by now and the policy is bound to it.
    if (r.currency != "USD") return "PolicyCurrency";
    if (!w.pol_categories.empty() && !w.pol_categories.count(r.category)) {
      return "PolicyCategory";
    }
    if (!w.pol_payees.empty() && !w.pol_payees.count(r.payee)) {
      return "PolicyPayee";
    }
    if (w.pol_per_tx && amount > *w.pol_per_tx) return "PolicyPerTx";
    if (pol_before + amount > w.pol_limit) return "PolicyPerPeriod";
  } else {
    m = &w.mandates[r.mandate];
    bool fits_mode;
    if (w.zk) {
      fits_mode = m->zk && r.proof_attached;
    } else if (w.policy) {
      fits_mode = w.override_flag && !m->zk && !r.proof_attached;
    } else {
      fits_mode = !m->zk && !r.proof_attached;
    }
    if (!fits_mode) return "IntentModeMismatch";
    if (!m->genuine) return "BadMandateSignature";
    if (!m->for_agent) return "MandateAgent";
    if (r.at > m->expires_at) return "MandateExpired";
    if (r.item != m->item) return "Item";
    if (r.payee != m->vendor) return "Vendor";
    if (r.currency != m->currency) return "Currency";
    const bool price_ok = w.zk ? (r.zk_proof == ZkProofKind::kHonest &&
                                  r.price <= m->max_price)
                               : r.price <= m->max_price;
    if (!price_ok) return "Price";
    if (static_cast<u128>(w.used_qty[r.mandate]) + r.qty > m->max_qty) {
      return "Quantity";
    }
  }

  if (w.attested) {
    switch (r.quote) {
      case QuoteKind::kValid: break;
      case QuoteKind::kNone: return "AttestationQuorum";
      case QuoteKind::kStale: return "AttestationFreshness";
      case QuoteKind::kWrongBinding: return "AttestationBinding";
      case QuoteKind::kBadCode: return "AttestationCodeHash";
      case QuoteKind::kBadSig: return "AttestationSignature";
    }
  }
  if (w.balance < amount) return "InsufficientBalance";

  w.balance -= amount;
  w.nonces.insert(r.nonce);
  w.cred_window = cred_now;
  w.cred_spent = static_cast<uint64_t>(cred_before + amount);
  if (m != nullptr) {
    w.used_qty[r.mandate] += r.qty;
  } else {
    w.pol_window = pol_now;
    w.pol_spent = static_cast<uint64_t>(pol_before + amount);
  }
  return "";
}

struct DifferentialStats {
  int requests = 0;
  int accepted = 0;
  int mismatches = 0;
  int zk_requests = 0;
  std::map<std::string, int> reasons;
  std::string first_mismatch;
};

// Builds random wallets and request streams until `total_requests` have been
// submitted. `zk_share` is the fraction of wallets in zk mode.
class PipelineDifferential {
 public:
  explicit PipelineDifferential(uint64_t seed) : rng_(seed) {}

  DifferentialStats Run(int total_requests, double zk_share,
                        int requests_per_wallet = 40) {
    DifferentialStats stats;
    while (stats.requests < total_requests) {
      RunWallet(std::min(requests_per_wallet, total_requests - stats.requests),
                zk_share, stats);
    }
    return stats;
  }

 private:
  uint64_t Uniform(uint64_t lo, uint64_t hi) {
    return std::uniform_int_distribution<uint64_t>(lo, hi)(rng_);
  }
  bool Chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <typename T>
  T Pick(const std::vector<T>& v) {
    return v[Uniform(0, v.size() - 1)];
  }

  void RunWallet(int n, double zk_share, DifferentialStats& stats) {
    ModelWallet mw;
    FixtureOptions o;
    const double u = std::uniform_real_distribution<double>(0, 1)(rng_);
    if (u < zk_share) {
      o.mode = ledger::IntentMode::kZkMandate;
      mw.zk = true;
    } else if (Chance(0.5)) {
      o.mode = ledger::IntentMode::kPolicy;
      mw.policy = true;
      o.allow_mandate_override = mw.override_flag = Chance(0.5);
    }
    o.credential_limit = mw.cred_limit = Uniform(5'000, 200'000);
    o.credential_period = mw.cred_period = Pick<uint64_t>({60, 600, 86400});
    o.credential_expires_at = mw.cred_expires = Uniform(4'000, 40'000);
    if (Chance(0.3)) o.allowed_payees = mw.cred_payees = {"Y", "V2"};
    if (Chance(0.3)) o.allowed_categories = mw.cred_categories = {"shopping"};
    if (mw.policy) {
      o.rules.per_period_limit_minor = mw.pol_limit = Uniform(1'000, 150'000);
      o.rules.period_seconds = mw.pol_period = Pick<uint64_t>({100, 1000});
      if (Chance(0.5)) o.rules.per_tx_limit_minor = mw.pol_per_tx = Uniform(500, 30'000);
      if (Chance(0.3)) o.rules.allowed_payees = mw.pol_payees = {"Y", "V3"};
      if (Chance(0.3)) o.rules.allowed_categories = mw.pol_categories = {"shopping", "travel"};
    }
    const KeyPair root = SeededKey(200);
    const Digest good_code = crypto::Hash("test/code", "agent-v1");
    const Digest bad_code = crypto::Hash("test/code", "agent-tampered");
    const auto enclave = attestation::EnclaveIdentity::Endorse(root, SeededKey(201), good_code);
    const auto tampered = attestation::EnclaveIdentity::Endorse(root, SeededKey(202), bad_code);
    if (Chance(0.3)) {
      attestation::AttestationPolicy ap;
      ap.root_key = root.public_key();
      ap.whitelisted_code_hashes = {good_code};
      ap.required_quotes_k = 1;
      ap.enclave_set = {enclave.public_key(), tampered.public_key()};
      o.attestation = ap;
      mw.attested = true;
    }
    o.deposit = mw.balance = Uniform(0, 300'000);
    o.seed_base = static_cast<uint8_t>(Uniform(1, 150));
    WalletFixture f(o);
    const KeyPair attacker = SeededKey(250);

    // Mandate pool.
    std::vector<mandate::IntentMandate> pool;
    std::vector<crypto::Scalar> blindings;
    for (int i = 0; i < 3; ++i) {
      ModelMandate m;
      m.zk = mw.zk ? !Chance(0.1) : Chance(0.1);
      m.item = Pick<std::string>({"Z", "W"});
      m.vendor = Pick<std::string>({"Y", "V2"});
      m.currency = Chance(0.95) ? "USD" : "EUR";
      m.max_price = Uniform(1'000, 20'000);
      m.max_qty = Uniform(1, 5);
      m.expires_at = Uniform(1'000, 8'000);
      m.for_agent = Chance(0.9);
      MandateTerms t = f.Terms(m.item, m.max_price, m.max_qty, m.vendor, m.expires_at);
      t.currency = m.currency;
      if (!m.for_agent) t.agent = f.other_agent_did;
      crypto::Scalar r;
      mandate::IntentMandate im;
      if (m.zk) {
        im = f.ZkMandate(t, m.max_price, "b" + std::to_string(rng_()), &r);
      } else {
        im = f.Mandate(t);
      }
      const int forge = static_cast<int>(Uniform(0, 19));
      if (forge == 0) {
        im.signature = attacker.Sign(canonical::Encode(im.Body()));
        m.genuine = false;
      } else if (forge == 1) {
        im.terms.max_quantity += 10;  // id no longer matches the body
        m.genuine = false;
      }
      mw.mandates.push_back(m);
      pool.push_back(im);
      blindings.push_back(r);
    }

    struct ZkSample {
      int mandate;
      int nonce;
      uint64_t price;
      zk::RangeProof proof;
    };
    std::optional<ZkSample> last_zk;
    uint64_t now = 0;
    int next_nonce = 0;
    std::vector<int> used_nonces;
    for (int step = 0; step < n; ++step) {
      now += Uniform(0, 150);
      if (!mw.revoked && Chance(0.004)) {
        f.chain.Revoke(ledger::RevokeTx::Sign(f.user, f.credential.credential_id), now);
        mw.revoked = true;
      }
      if (Chance(0.05)) {
        const uint64_t amount = Uniform(1, 50'000);
        f.Deposit(amount, now);
        mw.balance += amount;
      }

      ModelRequest r;
      r.at = now;
      r.known_wallet = !Chance(0.02);
      if (!used_nonces.empty() && Chance(0.05)) {
        r.nonce = Pick(used_nonces);
      } else {
        r.nonce = next_nonce++;
        used_nonces.push_back(r.nonce);
      }
      const int sig = static_cast<int>(Uniform(0, 39));
      r.signed_by_agent = sig != 0;
      r.names_agent = sig != 1;
      const int m_idx = static_cast<int>(Uniform(0, 2));
      const ModelMandate& pm = mw.mandates[m_idx];
      r.item = Chance(0.9) ? pm.item : Pick<std::string>({"Z", "W"});
      r.payee = Chance(0.85) ? pm.vendor : Pick<std::string>({"Y", "V2", "V3"});
      r.category = Pick<std::string>({"shopping", "shopping", "shopping", "travel", "food"});
      r.currency = Chance(0.94) ? "USD" : Pick<std::string>({"EUR", "GBP"});
      r.price = Chance(0.03) ? (uint64_t{1} << 63) + Uniform(0, 1000)
                             : Uniform(1, pm.max_price + pm.max_price / 4);
      r.qty = Chance(0.02) ? 0 : Uniform(1, 3);
      r.mandate = m_idx;
      const int ik = static_cast<int>(Uniform(0, 19));
      if (ik == 0) {
        r.intent = IntentKind::kNone;
      } else if (ik == 1) {
        r.intent = mw.policy ? IntentKind::kMandate : IntentKind::kPolicy;
      } else {
        r.intent = mw.policy && !(mw.override_flag && Chance(0.3))
                       ? IntentKind::kPolicy
                       : IntentKind::kMandate;
      }
      if (mw.attested) {
        r.quote = Chance(0.7) ? QuoteKind::kValid
                              : static_cast<QuoteKind>(Uniform(1, 5));
      }

      // Materialize.
      ledger::PaymentRequest req;
      req.wallet_id = r.known_wallet ? f.wallet_id : crypto::Hash("test/nowallet", "x");
      req.agent = r.names_agent ? f.agent_did : f.other_agent_did;
      req.payee = r.payee;
      req.item_id = r.item;
      req.unit_price_minor = r.price;
      req.quantity = r.qty;
      req.category = r.category;
      req.currency = r.currency;
      req.nonce = crypto::Hash("test/nonce", std::to_string(r.nonce));
      if (r.intent == IntentKind::kPolicy) {
        req.intent_proof = ledger::IntentProof::Policy();
      } else if (r.intent == IntentKind::kMandate) {
        const mandate::IntentMandate& im = pool[m_idx];
        std::optional<zk::RangeProof> proof;
        if (pm.zk) {
          const Digest ctx = mandate::PriceProofContext(im.mandate_id, req.nonce);
          const int pk = static_cast<int>(Uniform(0, 19));
          if (pk == 0) {
            r.zk_proof = ZkProofKind::kMissing;
          } else if (pk == 1 && last_zk) {
            // Replayed proof from an earlier request; it only verifies if
            // mandate, nonce and price all coincide.
            const bool same = last_zk->mandate == m_idx &&
                              last_zk->nonce == r.nonce &&
                              last_zk->price == r.price;
            r.zk_proof = same ? ZkProofKind::kHonest : ZkProofKind::kStale;
            proof = last_zk->proof;
          } else if (ReachesMandateCheck(mw, r)) {
            // Only pay for a proof when the pipeline will look at it.
            const bool honest = r.price <= pm.max_price;
            r.zk_proof = honest ? ZkProofKind::kHonest : ZkProofKind::kForLimit;
            proof = zk::ProvePriceWithinLimit(
                pm.max_price, blindings[m_idx], honest ? r.price : pm.max_price, ctx);
            last_zk = ZkSample{m_idx, r.nonce, r.price, *proof};
            ++stats.zk_requests;
          } else {
            r.zk_proof = ZkProofKind::kStale;
            proof = DummyProof();
          }
        } else if (Chance(0.03)) {
          proof = DummyProof();  // a proof attached to a plaintext mandate
        }
        r.proof_attached = proof.has_value();
        req.intent_proof = ledger::IntentProof::Mandate(im, proof);
      }
      req.SignWith(r.signed_by_agent ? (r.names_agent ? f.agent : f.other_agent)
                                     : attacker);
      if (mw.attested) AttachQuote(req, r.quote, enclave, tampered, now);

      const std::string expected = ModelSubmit(mw, r);
      const ledger::Receipt got = f.chain.SubmitPayment(req, now);
      const std::string actual =
          got.accepted ? "" : std::string(ledger::PaymentReasonName(*got.reason));
      ++stats.requests;
      stats.accepted += got.accepted;
      ++stats.reasons[actual.empty() ? "Accepted" : actual];
      if (actual != expected || f.wallet().balance_minor != mw.balance) {
        if (stats.mismatches++ == 0) {
          stats.first_mismatch = "expected '" + expected + "' got '" + actual +
                                 "' at request " + std::to_string(stats.requests);
        }
      }
    }
  }

  // True when the model would get as far as the mandate price check. Used
  // only to skip building proofs nobody will verify.
  static bool ReachesMandateCheck(const ModelWallet& w, const ModelRequest& r) {
    ModelWallet copy = w;
    copy.attested = false;
    copy.balance = UINT64_MAX;
    ModelRequest probe = r;
    probe.zk_proof = ZkProofKind::kHonest;
    probe.proof_attached = true;
    const std::string verdict = ModelSubmit(copy, probe);
    return verdict.empty() || verdict == "Price" || verdict == "Quantity";
  }

  static zk::RangeProof DummyProof() {
    static const zk::RangeProof proof = zk::ProvePriceWithinLimit(
        10, crypto::Scalar::FromUint64(7), 5, crypto::Hash("test/dummy", "p"));
    return proof;
  }

  void AttachQuote(ledger::PaymentRequest& req, QuoteKind& kind,
                   const attestation::EnclaveIdentity& good,
                   const attestation::EnclaveIdentity& tampered, uint64_t now) {
    const Digest d = req.ComputeDigest();
    switch (kind) {
      case QuoteKind::kValid:
        req.quotes = {attestation::IssueQuote(good, d, now)};
        break;
      case QuoteKind::kNone:
        break;
      case QuoteKind::kStale:
        if (now < 400) {
          kind = QuoteKind::kNone;  // too early for a stale quote
          break;
        }
        req.quotes = {attestation::IssueQuote(good, d, now - 400)};
        break;
      case QuoteKind::kWrongBinding:
        req.quotes = {attestation::IssueQuote(good, crypto::Hash("test/other", "r"), now)};
        break;
      case QuoteKind::kBadCode:
        req.quotes = {attestation::IssueQuote(tampered, d, now)};
        break;
      case QuoteKind::kBadSig: {
        auto q = attestation::IssueQuote(good, d, now);
        q.quote_sig.bytes[5] ^= 0x40;
        req.quotes = {q};
        break;
      }
    }
  }

  std::mt19937_64 rng_;
};

}  // namespace tiva::testing
