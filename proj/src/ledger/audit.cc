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

#include "tiva/ledger/audit.h"

#include <cstdio>

#include "tiva/common/error.h"

namespace tiva::ledger {

namespace {

Digest WalletOf(const LedgerEvent& e) {
  return canonical::GetFixed<Digest>(e.payload, "wallet_id");
}

}  // namespace

canonical::Value AuditRow::ToCanonical() const {
  return {{"amount_minor", amount_minor},
          {"at", at},
          {"event_hash", event_hash.ToHex()},
          {"height", height},
          {"intent_proof_digest",
           intent_proof_digest ? intent_proof_digest->ToHex() : std::string()},
          {"payee", payee},
          {"reason", reason},
          {"verdict", accepted ? "Accepted" : "Rejected"}};
}

std::vector<AuditRow> AuditReport(const std::vector<LedgerEvent>& events,
                                  const Digest& wallet_id) {
  bool created = false;
  std::vector<AuditRow> rows;
  for (const LedgerEvent& e : events) {
    if (e.kind == EventKind::kWalletCreated && WalletOf(e) == wallet_id) {
      created = true;
      continue;
    }
    if (e.kind != EventKind::kPaymentAccepted &&
        e.kind != EventKind::kPaymentRejected) {
      continue;
    }
    if (WalletOf(e) != wallet_id) continue;
    AuditRow row;
    row.height = e.height;
    row.event_hash = e.event_hash;
    row.at = canonical::GetUint(e.payload, "at");
    row.accepted = e.kind == EventKind::kPaymentAccepted;
    if (!row.accepted) row.reason = canonical::GetString(e.payload, "reason");
    row.intent_proof_digest = e.intent_proof_digest;
    row.payee = canonical::GetString(e.payload, "payee");
    if (canonical::Has(e.payload, "amount_minor")) {
      row.amount_minor = canonical::GetUint(e.payload, "amount_minor");
    }
    rows.push_back(std::move(row));
  }
  if (!created) throw Error(ErrorCode::kUnknownWallet, wallet_id.ToHex());
  return rows;
}

canonical::Value AuditToCanonical(const Digest& wallet_id,
                                  const std::vector<AuditRow>& rows) {
  canonical::Value list = canonical::Value::array();
  for (const auto& r : rows) list.push_back(r.ToCanonical());
  return {{"rows", list}, {"wallet_id", wallet_id.ToHex()}};
}

std::string RenderAuditTable(const Digest& wallet_id,
                             const std::vector<AuditRow>& rows) {
  std::string out = "wallet " + wallet_id.ToHex() + "\n";
  char line[256];
  std::snprintf(line, sizeof(line), "%-7s %-8s %-9s %-22s %14s  %s\n", "height",
                "at", "verdict", "reason", "amount", "intent_proof");
  out += line;
  for (const auto& r : rows) {
    const std::string proof =
        r.intent_proof_digest ? r.intent_proof_digest->ToHex().substr(0, 16) : "-";
    std::snprintf(line, sizeof(line), "%-7llu %-8llu %-9s %-22s %14llu  %s\n",
                  static_cast<unsigned long long>(r.height),
                  static_cast<unsigned long long>(r.at),
                  r.accepted ? "Accepted" : "Rejected",
                  r.reason.empty() ? "-" : r.reason.c_str(),
                  static_cast<unsigned long long>(r.amount_minor), proof.c_str());
    out += line;
  }
  return out;
}

std::map<Digest, uint64_t> BalancesFromEvents(
    const std::vector<LedgerEvent>& events) {
  std::map<Digest, uint64_t> balances;
  for (const LedgerEvent& e : events) {
    switch (e.kind) {
      case EventKind::kWalletCreated:
        balances[WalletOf(e)] = 0;
        break;
      case EventKind::kDeposited:
        balances[WalletOf(e)] += canonical::GetUint(e.payload, "amount_minor");
        break;
      case EventKind::kPaymentAccepted:
        balances[WalletOf(e)] -= canonical::GetUint(e.payload, "amount_minor");
        break;
      default:
        break;
    }
  }
  return balances;
}

std::string SerializeEvidence(const std::map<Digest, canonical::Value>& store) {
  std::string out;
  for (const auto& [digest, evidence] : store) {
    out += canonical::EncodeString({{"digest", digest.ToHex()}, {"evidence", evidence}});
    out += '\n';
  }
  return out;
}

std::map<Digest, canonical::Value> ParseEvidence(std::string_view text) {
  std::map<Digest, canonical::Value> store;
  size_t pos = 0;
  while (pos < text.size()) {
    const size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      throw Error(ErrorCode::kParseError, "unterminated evidence line");
    }
    auto v = canonical::Decode(text.substr(pos, nl - pos));
    store[canonical::GetFixed<Digest>(v, "digest")] = canonical::Field(v, "evidence");
    pos = nl + 1;
  }
  return store;
}

}  // namespace tiva::ledger
