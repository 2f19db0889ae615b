#pragma once

#include <stdexcept>
#include <string>

namespace twostep {

enum class ErrorKind {
  NotClosed,
  NotAntiHermitian,
  DegenerateForm,
  NotLinearlyIndependent,
  OutOfLogWindow,
  NotInAlgebra,
  NotInM,
  ConditionViolated,
  DegenerateSplit,
  StepTooLarge,
  UnknownPreset,
  BadSpecFile,
  BadInput,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so that callers (the CLI
// in particular) can map it onto an exit code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }
  // Message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

// Numerical breakdown raised at a specific curve parameter.
class NumericalError : public Error {
 public:
  NumericalError(ErrorKind kind, const std::string& what, double t);

  double t() const noexcept { return t_; }

 private:
  double t_;
};

}  // namespace twostep
