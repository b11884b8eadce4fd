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

#include "tiva/common/error.h"

namespace tiva {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSeedLength: return "SeedLength";
    case ErrorCode::kMalformedKey: return "MalformedKey";
    case ErrorCode::kMalformedSignature: return "MalformedSignature";
    case ErrorCode::kTagLength: return "TagLength";
    case ErrorCode::kUnencodableValue: return "UnencodableValue";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kBadDid: return "BadDid";
    case ErrorCode::kDidConflict: return "DidConflict";
    case ErrorCode::kBadDocument: return "BadDocument";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kBadSignature: return "BadSignature";
    case ErrorCode::kUnknownIssuer: return "UnknownIssuer";
    case ErrorCode::kSubjectNotControlled: return "SubjectNotControlled";
    case ErrorCode::kBadConstraints: return "BadConstraints";
    case ErrorCode::kBadBody: return "BadBody";
    case ErrorCode::kAgentNotControlled: return "AgentNotControlled";
    case ErrorCode::kBadRules: return "BadRules";
    case ErrorCode::kValueRange: return "ValueRange";
    case ErrorCode::kThresholdExceedsLimit: return "ThresholdExceedsLimit";
    case ErrorCode::kPriceExceedsLimit: return "PriceExceedsLimit";
    case ErrorCode::kBadEndorsement: return "BadEndorsement";
    case ErrorCode::kBadPolicy: return "BadPolicy";
    case ErrorCode::kBadBinding: return "BadBinding";
    case ErrorCode::kBadConfig: return "BadConfig";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kUnknownWallet: return "UnknownWallet";
    case ErrorCode::kUnknownPolicy: return "UnknownPolicy";
    case ErrorCode::kTimeRegression: return "TimeRegression";
    case ErrorCode::kStaleSequence: return "StaleSequence";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(ErrorCodeName(code)) +
                         (detail.empty() ? "" : ": " + detail)),
      code_(code) {}

}  // namespace tiva
