#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gnk {

enum class ErrorCode {
  InvalidParams,
  WrongCardinality,
  IndexOutOfRange,
  DuplicateIndex,
  ParamsMismatch,
  InvalidRelatorData,
  ParseError,
  DimensionMismatch,
  ZeroVector,
  TimeOutOfRange,
  Discontinuous,
  EndpointMismatch,
  GoodPathViolation,
  NotStable,
  SingularEndpoint,
  LeftConfigurationSpace,
  DiscViolation,
  LiftFailed,
};

std::string_view to_string(ErrorCode code);

/// Every failure in the library is reported through this exception. Scan
/// failures carry the offending times so callers can report them.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<double> times = {});

  ErrorCode code() const noexcept { return code_; }
  const std::vector<double>& times() const noexcept { return times_; }

 private:
  ErrorCode code_;
  std::vector<double> times_;
};

}  // namespace gnk
