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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rydmis {

// Every failure raised by the library carries one of these kinds so callers
// (and the CLI) can branch on the category without parsing messages.
enum class ErrorKind {
  InvalidArgument,
  DuplicatePosition,
  SpacingViolation,
  UnknownKind,
  ExhaustedAttempts,
  LengthMismatch,
  TooLarge,
  InvalidInterval,
  ParseError,
  InvalidOrdering,
  MissingProvenance,
  NonConvergence,
  ZeroDistance,
  TooManyQubits,
  IntegratorFailure,
  NoConvergence,
  AmbiguousManifold,
  ZeroGap,
  InvalidNoise,
  NonMonotoneTimes,
  BoundViolation,
  DurationTooShort,
  SingularKernelMatrix,
  BudgetExhausted,
  MissingMisSize,
  OutOfRange,
  TooLargeForExact,
  SingularModel,
  EmptyDistribution,
  NotAnIndependentSet,
  InsufficientData,
  AllSaturated,
  ProbabilityUnderflow,
  DepthTooLarge,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message);

}  // namespace rydmis
