#include "galcurve/error.hpp"

#include <sstream>

namespace galcurve {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownFunction: return "UnknownFunction";
    case ErrorKind::UnboundParameter: return "UnboundParameter";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::FrameUndefined: return "FrameUndefined";
    case ErrorKind::DegenerateSpeed: return "DegenerateSpeed";
    case ErrorKind::NotAnIsometry: return "NotAnIsometry";
    case ErrorKind::SingularLambda: return "SingularLambda";
    case ErrorKind::EmptyDomain: return "EmptyDomain";
    case ErrorKind::PlanarBase: return "PlanarBase";
    case ErrorKind::MismatchedTargets: return "MismatchedTargets";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

bool Error::is_numeric() const noexcept {
  switch (kind_) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownFunction:
    case ErrorKind::UnboundParameter:
    case ErrorKind::NotAnIsometry:
    case ErrorKind::MismatchedTargets:
    case ErrorKind::Usage:
      return false;
    default:
      return true;
  }
}

namespace {

std::string syntax_message(std::size_t offset, const std::vector<std::string>& expected,
                           const std::string& message) {
  std::ostringstream os;
  os << "syntax error at byte " << offset << ": " << message;
  if (!expected.empty()) {
    os << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      os << (i ? ", " : "") << expected[i];
    }
    os << ')';
  }
  return os.str();
}

}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected,
                         const std::string& message)
    : Error(ErrorKind::SyntaxError, syntax_message(offset, expected, message)),
      offset_(offset),
      expected_(std::move(expected)) {}

NotAdmissible::NotAdmissible(double t_witness)
    : Error(ErrorKind::NotAdmissible,
            "curve is not admissible: x'(t) vanishes or changes sign near t = " +
                std::to_string(t_witness)),
      t_witness_(t_witness) {}

void raise(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace galcurve
