//  Copyright 2026 The Ambiguity Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#ifndef AMBIGUITY_ERRORS_HPP_
#define AMBIGUITY_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ambiguity {

// Every validation failure carries one of these codes so callers (and the
// CLI exit-code contract) can branch without parsing messages.
enum class ErrorCode {
  NameClash,
  DomainMismatch,
  KnobDomainMismatch,
  NotNormalized,
  OverlappingDomains,
  DimMismatch,
  UnknownDetector,
  CannotDropAll,
  FactorizationInvalid,
  PairInvalid,
  DetectorTooSmall,
  NotAnExplanation,
  NoInequivalentPair,
  ChainAmbiguity,
  GrowthCapExceeded,
  InvalidInput,
};

inline const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NameClash: return "NameClash";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::KnobDomainMismatch: return "KnobDomainMismatch";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::OverlappingDomains: return "OverlappingDomains";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::UnknownDetector: return "UnknownDetector";
    case ErrorCode::CannotDropAll: return "CannotDropAll";
    case ErrorCode::FactorizationInvalid: return "FactorizationInvalid";
    case ErrorCode::PairInvalid: return "PairInvalid";
    case ErrorCode::DetectorTooSmall: return "DetectorTooSmall";
    case ErrorCode::NotAnExplanation: return "NotAnExplanation";
    case ErrorCode::NoInequivalentPair: return "NoInequivalentPair";
    case ErrorCode::ChainAmbiguity: return "ChainAmbiguity";
    case ErrorCode::GrowthCapExceeded: return "GrowthCapExceeded";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ambiguity

#endif  // AMBIGUITY_ERRORS_HPP_
