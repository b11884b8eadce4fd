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

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tiva {

using Bytes = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;

std::string ToHex(ByteSpan bytes);

// Strict lowercase hex. Returns nullopt on odd length or any other character.
std::optional<Bytes> FromHex(std::string_view hex);

inline ByteSpan AsBytes(std::string_view s) {
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

inline void Append(Bytes& out, ByteSpan in) {
  out.insert(out.end(), in.begin(), in.end());
}

// Fixed-width byte string with a distinct type per role.
template <size_t N, typename Tag>
struct FixedBytes {
  static constexpr size_t kSize = N;

  std::array<uint8_t, N> bytes{};

  std::string ToHex() const { return ::tiva::ToHex(bytes); }

  static std::optional<FixedBytes> FromHex(std::string_view hex) {
    auto raw = ::tiva::FromHex(hex);
    if (!raw || raw->size() != N) return std::nullopt;
    FixedBytes out;
    std::copy(raw->begin(), raw->end(), out.bytes.begin());
    return out;
  }

  static std::optional<FixedBytes> FromSpan(ByteSpan raw) {
    if (raw.size() != N) return std::nullopt;
    FixedBytes out;
    std::copy(raw.begin(), raw.end(), out.bytes.begin());
    return out;
  }

  ByteSpan span() const { return bytes; }

  friend auto operator<=>(const FixedBytes&, const FixedBytes&) = default;
  friend bool operator==(const FixedBytes&, const FixedBytes&) = default;
};

}  // namespace tiva
