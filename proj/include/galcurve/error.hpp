#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace galcurve {

enum class ErrorKind {
  DivisionByZero,
  DomainError,
  SyntaxError,
  UnknownFunction,
  UnboundParameter,
  OutOfDomain,
  NotAdmissible,
  NoConvergence,
  FrameUndefined,
  DegenerateSpeed,
  NotAnIsometry,
  SingularLambda,
  EmptyDomain,
  PlanarBase,
  MismatchedTargets,
  Usage,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every error raised by the library. The kind decides how the CLI
/// maps the failure onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures of the numerics (singularities, non-admissible input,
  /// non-convergence) as opposed to malformed input.
  bool is_numeric() const noexcept;

 private:
  ErrorKind kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected,
              const std::string& message);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class NotAdmissible : public Error {
 public:
  explicit NotAdmissible(double t_witness);
  double t_witness() const noexcept { return t_witness_; }

 private:
  double t_witness_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message);

}  // namespace galcurve
