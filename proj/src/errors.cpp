#include "rebound/errors.hpp"

#include <cstdio>

namespace rebound {

namespace {

std::string format_violation(const std::string& inequality, double slack) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", slack);
  return inequality + " violated (slack " + buf + ")";
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}

Error::Error(ErrorKind kind, const std::string& inequality, double slack)
    : std::runtime_error(format_violation(inequality, slack)), kind_(kind), inequality_(inequality), slack_(slack) {}

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::TooFewGroups: return "TooFewGroups";
    case ErrorKind::TooFewObservations: return "TooFewObservations";
    case ErrorKind::NonpositivePrecision: return "NonpositivePrecision";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::InvalidBracket: return "InvalidBracket";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::DriftPreconditionViolated: return "DriftPreconditionViolated";
    case ErrorKind::NotBalanced: return "NotBalanced";
    case ErrorKind::AssumptionViolated: return "AssumptionViolated";
    case ErrorKind::AlphaNotGreaterThanOne: return "AlphaNotGreaterThanOne";
    case ErrorKind::NonpositiveRadius: return "NonpositiveRadius";
    case ErrorKind::EmptySmallSet: return "EmptySmallSet";
    case ErrorKind::InvalidInterval: return "InvalidInterval";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::JLessThanOne: return "JLessThanOne";
    case ErrorKind::NPrimeTooSmall: return "NPrimeTooSmall";
    case ErrorKind::BetaOutOfRange: return "BetaOutOfRange";
    case ErrorKind::NonContractive: return "NonContractive";
    case ErrorKind::TargetUnreachable: return "TargetUnreachable";
    case ErrorKind::AllPointsInfeasible: return "AllPointsInfeasible";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_precondition_kind(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::IoError:
      return false;
    default:
      return true;
  }
}

}  // namespace rebound
