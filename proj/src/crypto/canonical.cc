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

#include "tiva/crypto/canonical.h"

namespace tiva::canonical {

namespace {

void CheckModel(const Value& v) {
  switch (v.type()) {
    case Value::value_t::number_integer:
    case Value::value_t::number_unsigned:
    case Value::value_t::string:
      return;
    case Value::value_t::array:
      for (const auto& item : v) CheckModel(item);
      return;
    case Value::value_t::object:
      for (const auto& [k, item] : v.items()) CheckModel(item);
      return;
    default:
      throw Error(ErrorCode::kUnencodableValue,
                  std::string("type '") + v.type_name() +
                      "' is outside the canonical data model");
  }
}

}  // namespace

std::string EncodeString(const Value& value) {
  CheckModel(value);
  try {
    return value.dump(-1, ' ', false, Value::error_handler_t::strict);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kUnencodableValue, e.what());
  }
}

Bytes Encode(const Value& value) {
  const std::string s = EncodeString(value);
  return Bytes(s.begin(), s.end());
}

Value DecodeRelaxed(std::string_view text) {
  Value v;
  try {
    v = Value::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  try {
    CheckModel(v);
  } catch (const Error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  return v;
}

Value Decode(std::string_view text) {
  Value v = DecodeRelaxed(text);
  if (EncodeString(v) != text) {
    throw Error(ErrorCode::kParseError, "input is not in canonical form");
  }
  return v;
}

const Value& Field(const Value& obj, std::string_view key) {
  if (!obj.is_object()) {
    throw Error(ErrorCode::kParseError, "expected a map");
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorCode::kParseError,
                "missing field '" + std::string(key) + "'");
  }
  return *it;
}

bool Has(const Value& obj, std::string_view key) {
  return obj.is_object() && obj.find(key) != obj.end();
}

uint64_t GetUint(const Value& obj, std::string_view key) {
  const Value& v = Field(obj, key);
  if (v.is_number_unsigned()) return v.get<uint64_t>();
  if (v.is_number_integer() && v.get<int64_t>() >= 0) {
    return static_cast<uint64_t>(v.get<int64_t>());
  }
  throw Error(ErrorCode::kParseError,
              "field '" + std::string(key) + "' is not a non-negative integer");
}

std::string GetString(const Value& obj, std::string_view key) {
  const Value& v = Field(obj, key);
  if (!v.is_string()) {
    throw Error(ErrorCode::kParseError,
                "field '" + std::string(key) + "' is not a string");
  }
  return v.get<std::string>();
}

Bytes GetBytes(const Value& obj, std::string_view key) {
  auto raw = FromHex(GetString(obj, key));
  if (!raw) {
    throw Error(ErrorCode::kParseError,
                "field '" + std::string(key) + "' is not lowercase hex");
  }
  return *raw;
}

std::set<std::string> GetStringSet(const Value& obj, std::string_view key) {
  const Value& v = Field(obj, key);
  if (!v.is_array()) {
    throw Error(ErrorCode::kParseError,
                "field '" + std::string(key) + "' is not a list");
  }
  std::set<std::string> out;
  std::string prev;
  for (const auto& item : v) {
    if (!item.is_string()) {
      throw Error(ErrorCode::kParseError,
                  "field '" + std::string(key) + "' has a non-string item");
    }
    std::string s = item.get<std::string>();
    if (!out.empty() && s <= prev) {
      throw Error(ErrorCode::kParseError,
                  "field '" + std::string(key) + "' is not a sorted set");
    }
    prev = s;
    out.insert(std::move(s));
  }
  return out;
}

Value StringSet(const std::set<std::string>& items) {
  Value arr = Value::array();
  for (const auto& s : items) arr.push_back(s);
  return arr;
}

}  // namespace tiva::canonical
