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

#include "tiva/ledger/event.h"

#include <array>

#include "tiva/common/error.h"

namespace tiva::ledger {

namespace {

constexpr std::array<std::string_view, 10> kKindNames = {
    "Genesis",   "Registered",      "Issued",          "Revoked",
    "WalletCreated", "Deposited",   "PaymentAccepted", "PaymentRejected",
    "PolicyDeployed", "WhitelistUpdated"};

constexpr size_t kEventFields = 7;

std::string DigestField(const std::optional<Digest>& d) {
  return d ? d->ToHex() : std::string();
}

}  // namespace

std::string_view EventKindName(EventKind kind) {
  return kKindNames[static_cast<size_t>(kind)];
}

std::optional<EventKind> ParseEventKind(std::string_view name) {
  for (size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<EventKind>(i);
  }
  return std::nullopt;
}

LedgerEvent LedgerEvent::Make(uint64_t height, EventKind kind,
                              canonical::Value payload,
                              std::optional<Digest> intent_proof_digest,
                              const Digest& prev_event_hash) {
  LedgerEvent e;
  e.height = height;
  e.kind = kind;
  e.payload = std::move(payload);
  e.intent_proof_digest = intent_proof_digest;
  e.prev_event_hash = prev_event_hash;
  e.payload_digest = e.ComputePayloadDigest();
  e.event_hash = e.ComputeEventHash();
  return e;
}

Digest LedgerEvent::ComputePayloadDigest() const {
  return crypto::Hash("tiva/payload", canonical::Encode(payload));
}

Digest LedgerEvent::ComputeEventHash() const {
  return crypto::Hash(
      "tiva/event",
      canonical::Encode({{"height", height},
                         {"intent_proof_digest", DigestField(intent_proof_digest)},
                         {"kind", EventKindName(kind)},
                         {"payload_digest", payload_digest.ToHex()},
                         {"prev_event_hash", prev_event_hash.ToHex()}}));
}

canonical::Value LedgerEvent::ToCanonical() const {
  return {{"event_hash", event_hash.ToHex()},
          {"height", height},
          {"intent_proof_digest", DigestField(intent_proof_digest)},
          {"kind", EventKindName(kind)},
          {"payload", payload},
          {"payload_digest", payload_digest.ToHex()},
          {"prev_event_hash", prev_event_hash.ToHex()}};
}

LedgerEvent LedgerEvent::FromCanonical(const canonical::Value& v) {
  if (!v.is_object() || v.size() != kEventFields) {
    throw Error(ErrorCode::kParseError, "event must have exactly 7 fields");
  }
  LedgerEvent e;
  e.event_hash = canonical::GetFixed<Digest>(v, "event_hash");
  e.height = canonical::GetUint(v, "height");
  const std::string proof = canonical::GetString(v, "intent_proof_digest");
  if (!proof.empty()) {
    e.intent_proof_digest = canonical::GetFixed<Digest>(v, "intent_proof_digest");
  }
  auto kind = ParseEventKind(canonical::GetString(v, "kind"));
  if (!kind) throw Error(ErrorCode::kParseError, "unknown event kind");
  e.kind = *kind;
  e.payload = canonical::Field(v, "payload");
  if (!e.payload.is_object()) {
    throw Error(ErrorCode::kParseError, "payload must be a map");
  }
  e.payload_digest = canonical::GetFixed<Digest>(v, "payload_digest");
  e.prev_event_hash = canonical::GetFixed<Digest>(v, "prev_event_hash");
  return e;
}

std::string SerializeChain(const std::vector<LedgerEvent>& events) {
  std::string out;
  for (const auto& e : events) {
    out += canonical::EncodeString(e.ToCanonical());
    out += '\n';
  }
  return out;
}

std::vector<LedgerEvent> ParseChain(std::string_view text) {
  std::vector<LedgerEvent> events;
  size_t pos = 0;
  while (pos < text.size()) {
    const size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      throw Error(ErrorCode::kParseError, "last line is not terminated");
    }
    events.push_back(
        LedgerEvent::FromCanonical(canonical::Decode(text.substr(pos, nl - pos))));
    pos = nl + 1;
  }
  return events;
}

ChainCheck VerifyChainText(std::string_view text, ChainCursor from) {
  ChainCheck check;
  check.head = from.prev_hash;
  size_t pos = from.offset;
  uint64_t height = from.next_height;
  auto fail = [&](std::string error) {
    check.ok = false;
    check.bad_height = height;
    check.error = std::move(error);
    return check;
  };
  if (height == 0 && pos >= text.size()) return fail("missing genesis event");
  while (pos < text.size()) {
    const size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) return fail("unterminated line");
    LedgerEvent e;
    try {
      e = LedgerEvent::FromCanonical(canonical::Decode(text.substr(pos, nl - pos)));
    } catch (const Error& err) {
      return fail(err.what());
    }
    if (e.height != height) return fail("height is not consecutive");
    if ((e.kind == EventKind::kGenesis) != (height == 0)) {
      return fail("genesis must be exactly the first event");
    }
    if (e.prev_event_hash != check.head) return fail("broken prev link");
    if (e.ComputePayloadDigest() != e.payload_digest) {
      return fail("payload digest mismatch");
    }
    if (e.ComputeEventHash() != e.event_hash) return fail("event hash mismatch");
    check.head = e.event_hash;
    ++check.events;
    ++height;
    pos = nl + 1;
  }
  check.ok = true;
  return check;
}

bool VerifyChain(const std::vector<LedgerEvent>& events) {
  if (events.empty()) return false;
  Digest prev;
  for (size_t i = 0; i < events.size(); ++i) {
    const LedgerEvent& e = events[i];
    if (e.height != i || (e.kind == EventKind::kGenesis) != (i == 0) ||
        e.prev_event_hash != prev ||
        e.ComputePayloadDigest() != e.payload_digest ||
        e.ComputeEventHash() != e.event_hash) {
      return false;
    }
    prev = e.event_hash;
  }
  return true;
}

std::vector<ChainCursor> LineCursors(std::string_view text) {
  std::vector<ChainCursor> cursors;
  ChainCursor c;
  cursors.push_back(c);
  while (c.offset < text.size()) {
    const size_t nl = text.find('\n', c.offset);
    if (nl == std::string_view::npos) break;
    auto v = canonical::Decode(text.substr(c.offset, nl - c.offset));
    c.prev_hash = canonical::GetFixed<Digest>(v, "event_hash");
    c.next_height += 1;
    c.offset = nl + 1;
    cursors.push_back(c);
  }
  return cursors;
}

}  // namespace tiva::ledger
