#pragma once

#include <stdexcept>
#include <string>

namespace rebound {

enum class ErrorKind {
  TooFewGroups,
  TooFewObservations,
  NonpositivePrecision,
  DomainError,
  InvalidBracket,
  NonConvergence,
  DriftPreconditionViolated,
  NotBalanced,
  AssumptionViolated,
  AlphaNotGreaterThanOne,
  NonpositiveRadius,
  EmptySmallSet,
  InvalidInterval,
  PreconditionViolated,
  JLessThanOne,
  NPrimeTooSmall,
  BetaOutOfRange,
  NonContractive,
  TargetUnreachable,
  AllPointsInfeasible,
  ParseError,
  ValidationError,
  IoError,
};

const char* error_kind_name(ErrorKind kind);

// Every failure in the library is reported through this type. Precondition
// failures carry the name of the violated inequality and its signed slack
// (positive means the inequality missed by that amount).
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message);
  Error(ErrorKind kind, const std::string& inequality, double slack);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& inequality() const noexcept { return inequality_; }
  double slack() const noexcept { return slack_; }
  bool has_slack() const noexcept { return !inequality_.empty(); }

private:
  ErrorKind kind_;
  std::string inequality_;
  double slack_ = 0.0;
};

// True for the kinds that signal a violated mathematical precondition rather
// than bad input plumbing.
bool is_precondition_kind(ErrorKind kind);

}  // namespace rebound
