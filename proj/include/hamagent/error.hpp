// Copyright 2026 The hamagent Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
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

namespace hamagent {

enum class ErrorCode {
  // tensor core
  DimensionCapExceeded,
  DimensionMismatch,
  InvalidFactorIndex,
  ConvergenceFailure,
  NotHermitian,
  InvalidState,
  // generators
  MissingParameter,
  UnknownKind,
  InvalidParameter,
  NotProjector,
  NotUnitary,
  // dynamics
  NonfiniteEvaluation,
  StepTooLarge,
  PositivityViolation,
  TraceDrift,
  NotResolutionOfIdentity,
  ZeroProbabilityOutcome,
  UnknownMetric,
  // scenarios
  TraceNonpreserving,
  InconsistentChannel,
  SeriesTooShort,
  NonpositiveSample,
  MixedSide,
  MissingSupplier,
  // configuration and io
  ParseError,
  UnknownKey,
  InvariantViolation,
  Io,
};

/// Coarse grouping used for process exit codes.
enum class ErrorCategory { Config, Numeric, Io };

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionCapExceeded: return "dimension-cap-exceeded";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::InvalidFactorIndex: return "invalid-factor-index";
    case ErrorCode::ConvergenceFailure: return "convergence-failure";
    case ErrorCode::NotHermitian: return "not-hermitian";
    case ErrorCode::InvalidState: return "invalid-state";
    case ErrorCode::MissingParameter: return "missing-parameter";
    case ErrorCode::UnknownKind: return "unknown-kind";
    case ErrorCode::InvalidParameter: return "invalid-parameter";
    case ErrorCode::NotProjector: return "not-projector";
    case ErrorCode::NotUnitary: return "not-unitary";
    case ErrorCode::NonfiniteEvaluation: return "nonfinite-evaluation";
    case ErrorCode::StepTooLarge: return "step-too-large";
    case ErrorCode::PositivityViolation: return "positivity-violation";
    case ErrorCode::TraceDrift: return "trace-drift";
    case ErrorCode::NotResolutionOfIdentity: return "non-resolution-of-identity";
    case ErrorCode::ZeroProbabilityOutcome: return "zero-probability-outcome";
    case ErrorCode::UnknownMetric: return "metric-unknown";
    case ErrorCode::TraceNonpreserving: return "trace-nonpreserving";
    case ErrorCode::InconsistentChannel: return "inconsistent-channel";
    case ErrorCode::SeriesTooShort: return "series-too-short";
    case ErrorCode::NonpositiveSample: return "nonpositive-magnitude-sample";
    case ErrorCode::MixedSide: return "mixed-side";
    case ErrorCode::MissingSupplier: return "missing-supplier";
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::UnknownKey: return "unknown-key";
    case ErrorCode::InvariantViolation: return "invariant-violation";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

constexpr ErrorCategory category(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::UnknownKey:
    case ErrorCode::InvariantViolation:
      return ErrorCategory::Config;
    case ErrorCode::Io:
      return ErrorCategory::Io;
    default:
      return ErrorCategory::Numeric;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return hamagent::category(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace hamagent
