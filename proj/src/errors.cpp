#include "twostep/errors.hpp"

#include <sstream>

namespace twostep {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotAntiHermitian: return "NotAntiHermitian";
    case ErrorKind::DegenerateForm: return "DegenerateForm";
    case ErrorKind::NotLinearlyIndependent: return "NotLinearlyIndependent";
    case ErrorKind::OutOfLogWindow: return "OutOfLogWindow";
    case ErrorKind::NotInAlgebra: return "NotInAlgebra";
    case ErrorKind::NotInM: return "NotInM";
    case ErrorKind::ConditionViolated: return "ConditionViolated";
    case ErrorKind::DegenerateSplit: return "DegenerateSplit";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::UnknownPreset: return "UnknownPreset";
    case ErrorKind::BadSpecFile: return "BadSpecFile";
    case ErrorKind::BadInput: return "BadInput";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

namespace {
std::string with_time(const std::string& what, double t) {
  std::ostringstream os;
  os << what << " (at t = " << t << ")";
  return os.str();
}
}  // namespace

NumericalError::NumericalError(ErrorKind kind, const std::string& what, double t)
    : Error(kind, with_time(what, t)), t_(t) {}

}  // namespace twostep
