// Copyright (c) 2026 The phaselab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace phaselab {

enum class ErrorCode {
  InvalidArgument,
  NotHermitian,
  NotPsd,
  BadTrace,
  NotNormalized,
  DimensionMismatch,
  BadDimension,
  BlochOutOfBall,
  EpsilonTooLarge,
  NotEquimodular,
  NotSubnormalized,
  TargetNotNonnegative,
  SolverStalled,
  ParseError,
};

// Every throw site names the violated invariant and its margin in what().
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

} // namespace phaselab
