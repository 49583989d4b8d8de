#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cscforge {

/// Failure categories raised by the library.  Each maps onto one of the
/// documented error conditions of the public operations.
enum class ErrorCode {
  NotASimplePole,
  DuplicatePole,
  ZeroResidue,
  ZeroForm,
  EvalAtPole,
  BadInitialValue,
  BasePointIsPole,
  HypothesesFailed,
  PathTooCloseToPole,
  StepUnderflow,
  DegenerateHyperbolicPoint,
  GridTouchesSingularity,
  AnnulusContainsSingularity,
  NonConicalSingularityPresent,
  NotMonomialIdentity,
  ZeroMu,
  PatternMismatch,
  ResidueMismatch,
  InvalidCaseData,
  InvalidAlpha,
  DegenerateA,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cscforge
