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

// Canonical text encoding used for every signed or hashed structure.
//
// The data model is integers, strings, byte arrays, lists and maps. Encoded
// form: UTF-8 JSON text, map keys sorted by byte value, no insignificant
// whitespace, integers in base 10 without leading zeros, byte arrays as
// lowercase hex strings. Floats, booleans and null are not encodable.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tiva/common/bytes.h"
#include "tiva/common/error.h"

namespace tiva::canonical {

using Value = nlohmann::json;

// Throws kUnencodableValue.
std::string EncodeString(const Value& value);
Bytes Encode(const Value& value);

// Parses text that must already be in canonical form (re-encoding yields the
// same bytes). Throws kParseError.
Value Decode(std::string_view text);

// Parses JSON text allowing insignificant whitespace; the value must still
// be in the data model. Throws kParseError.
Value DecodeRelaxed(std::string_view text);

// Typed field accessors for decoding structures. All throw kParseError.
const Value& Field(const Value& obj, std::string_view key);
uint64_t GetUint(const Value& obj, std::string_view key);
std::string GetString(const Value& obj, std::string_view key);
Bytes GetBytes(const Value& obj, std::string_view key);
std::set<std::string> GetStringSet(const Value& obj, std::string_view key);
bool Has(const Value& obj, std::string_view key);

template <typename Fixed>
Fixed GetFixed(const Value& obj, std::string_view key) {
  auto v = Fixed::FromHex(GetString(obj, key));
  if (!v) {
    throw Error(ErrorCode::kParseError,
                "field '" + std::string(key) + "' is not a valid hex value");
  }
  return *v;
}

Value StringSet(const std::set<std::string>& items);

}  // namespace tiva::canonical
