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

// Hash-chained event log and its line-oriented file format.
//
// Each event is one canonical line:
//   {"event_hash","height","intent_proof_digest","kind","payload",
//    "payload_digest","prev_event_hash"}
// payload_digest = hash("tiva/payload", canonical payload) and
// event_hash = hash("tiva/event", canonical {height, intent_proof_digest,
// kind, payload_digest, prev_event_hash}). Height 0 is the Genesis event
// with an all-zero prev_event_hash.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tiva/crypto/canonical.h"
#include "tiva/crypto/hash.h"

namespace tiva::ledger {

using crypto::Digest;

enum class EventKind {
  kGenesis,
  kRegistered,
  kIssued,
  kRevoked,
  kWalletCreated,
  kDeposited,
  kPaymentAccepted,
  kPaymentRejected,
  kPolicyDeployed,
  kWhitelistUpdated,
};

std::string_view EventKindName(EventKind kind);
std::optional<EventKind> ParseEventKind(std::string_view name);

struct LedgerEvent {
  uint64_t height = 0;
  EventKind kind = EventKind::kGenesis;
  canonical::Value payload;
  Digest payload_digest;
  std::optional<Digest> intent_proof_digest;
  Digest prev_event_hash;
  Digest event_hash;

  // Fills payload_digest and event_hash from the other fields.
  static LedgerEvent Make(uint64_t height, EventKind kind,
                          canonical::Value payload,
                          std::optional<Digest> intent_proof_digest,
                          const Digest& prev_event_hash);

  Digest ComputePayloadDigest() const;
  Digest ComputeEventHash() const;

  canonical::Value ToCanonical() const;
  // Structural parse only; hashes are checked by VerifyChainText.
  static LedgerEvent FromCanonical(const canonical::Value& v);

  friend bool operator==(const LedgerEvent&, const LedgerEvent&) = default;
};

std::string SerializeChain(const std::vector<LedgerEvent>& events);
// Throws kParseError; does not check hashes.
std::vector<LedgerEvent> ParseChain(std::string_view text);

// Position in a chain file between two lines.
struct ChainCursor {
  uint64_t next_height = 0;
  Digest prev_hash;
  size_t offset = 0;
};

struct ChainCheck {
  bool ok = false;
  uint64_t events = 0;            // events verified from the cursor
  std::optional<uint64_t> bad_height;
  std::string error;
  Digest head;                    // last verified event hash
};

// Verifies the file from `from` to the end: every line canonical, heights
// consecutive, payload digests, event hashes and prev links correct. The
// fold is left to right, so verifying from a cursor taken on a valid prefix
// equals verifying the whole file.
ChainCheck VerifyChainText(std::string_view text, ChainCursor from = {});

bool VerifyChain(const std::vector<LedgerEvent>& events);

// Cursor before every line of a valid chain file (plus one at the end).
std::vector<ChainCursor> LineCursors(std::string_view text);

}  // namespace tiva::ledger
