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

#include <stdexcept>
#include <string>
#include <string_view>

namespace tiva {

// Precondition and transaction failures. Verification outcomes (credential,
// mandate, policy, attestation, payment) are values, not errors.
enum class ErrorCode {
  kSeedLength,
  kMalformedKey,
  kMalformedSignature,
  kTagLength,
  kUnencodableValue,
  kParseError,
  kBadDid,
  kDidConflict,
  kBadDocument,
  kNotFound,
  kBadSignature,
  kUnknownIssuer,
  kSubjectNotControlled,
  kBadConstraints,
  kBadBody,
  kAgentNotControlled,
  kBadRules,
  kValueRange,
  kThresholdExceedsLimit,
  kPriceExceedsLimit,
  kBadEndorsement,
  kBadPolicy,
  kBadBinding,
  kBadConfig,
  kOverflow,
  kUnknownWallet,
  kUnknownPolicy,
  kTimeRegression,
  kStaleSequence,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tiva
