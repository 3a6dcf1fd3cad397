#include "gnk/error.hpp"

namespace gnk {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::WrongCardinality: return "WrongCardinality";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DuplicateIndex: return "DuplicateIndex";
    case ErrorCode::ParamsMismatch: return "ParamsMismatch";
    case ErrorCode::InvalidRelatorData: return "InvalidRelatorData";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::TimeOutOfRange: return "TimeOutOfRange";
    case ErrorCode::Discontinuous: return "Discontinuous";
    case ErrorCode::EndpointMismatch: return "EndpointMismatch";
    case ErrorCode::GoodPathViolation: return "GoodPathViolation";
    case ErrorCode::NotStable: return "NotStable";
    case ErrorCode::SingularEndpoint: return "SingularEndpoint";
    case ErrorCode::LeftConfigurationSpace: return "LeftC'n";
    case ErrorCode::DiscViolation: return "DiscViolation";
    case ErrorCode::LiftFailed: return "LiftFailed";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::vector<double> times)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      times_(std::move(times)) {}

}  // namespace gnk
