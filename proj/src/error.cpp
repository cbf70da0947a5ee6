// Copyright 2026 The rydmis Authors
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

#include "rydmis/error.hpp"

#include <string>

namespace rydmis {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DuplicatePosition: return "DuplicatePosition";
    case ErrorKind::SpacingViolation: return "SpacingViolation";
    case ErrorKind::UnknownKind: return "UnknownKind";
    case ErrorKind::ExhaustedAttempts: return "ExhaustedAttempts";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvalidInterval: return "InvalidInterval";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidOrdering: return "InvalidOrdering";
    case ErrorKind::MissingProvenance: return "MissingProvenance";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::ZeroDistance: return "ZeroDistance";
    case ErrorKind::TooManyQubits: return "TooManyQubits";
    case ErrorKind::IntegratorFailure: return "IntegratorFailure";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::AmbiguousManifold: return "AmbiguousManifold";
    case ErrorKind::ZeroGap: return "ZeroGap";
    case ErrorKind::InvalidNoise: return "InvalidNoise";
    case ErrorKind::NonMonotoneTimes: return "NonMonotoneTimes";
    case ErrorKind::BoundViolation: return "BoundViolation";
    case ErrorKind::DurationTooShort: return "DurationTooShort";
    case ErrorKind::SingularKernelMatrix: return "SingularKernelMatrix";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::MissingMisSize: return "MissingMisSize";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::TooLargeForExact: return "TooLargeForExact";
    case ErrorKind::SingularModel: return "SingularModel";
    case ErrorKind::EmptyDistribution: return "EmptyDistribution";
    case ErrorKind::NotAnIndependentSet: return "NotAnIndependentSet";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::AllSaturated: return "AllSaturated";
    case ErrorKind::ProbabilityUnderflow: return "ProbabilityUnderflow";
    case ErrorKind::DepthTooLarge: return "DepthTooLarge";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void raise(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace rydmis
