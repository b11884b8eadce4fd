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

// Read-side views computed purely from the event log.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tiva/crypto/canonical.h"
#include "tiva/ledger/event.h"

namespace tiva::ledger {

struct AuditRow {
  uint64_t height = 0;
  Digest event_hash;
  uint64_t at = 0;
  bool accepted = false;
  std::string reason;  // empty when accepted
  std::optional<Digest> intent_proof_digest;
  std::string payee;
  uint64_t amount_minor = 0;  // 0 if the amount was never computed

  canonical::Value ToCanonical() const;
};

// One row per payment event of `wallet_id`, in chain order. Throws
// kUnknownWallet if the log never created that wallet.
std::vector<AuditRow> AuditReport(const std::vector<LedgerEvent>& events,
                                  const Digest& wallet_id);

canonical::Value AuditToCanonical(const Digest& wallet_id,
                                  const std::vector<AuditRow>& rows);
std::string RenderAuditTable(const Digest& wallet_id,
                             const std::vector<AuditRow>& rows);

// Balance of every wallet implied by the log: deposits minus accepted
// payment amounts.
std::map<Digest, uint64_t> BalancesFromEvents(const std::vector<LedgerEvent>& events);

// Evidence store file: one canonical {"digest","evidence"} line per entry,
// ordered by digest.
std::string SerializeEvidence(const std::map<Digest, canonical::Value>& store);
// Throws kParseError.
std::map<Digest, canonical::Value> ParseEvidence(std::string_view text);

}  // namespace tiva::ledger
