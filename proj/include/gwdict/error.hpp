#pragma once

#include <stdexcept>
#include <string>

namespace gwdict {

// Process exit codes used by the command-line tool.
enum class ExitCode : int {
  kSuccess = 0,
  kInvalidInput = 2,
  kNumericalFailure = 3,
  kInvariantViolation = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

// Malformed graph, signal or parameter.
class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what)
      : Error(ExitCode::kInvalidInput, what) {}
};

// Iterative solver failed to converge.
class NumericalFailure : public Error {
 public:
  explicit NumericalFailure(const std::string& what)
      : Error(ExitCode::kNumericalFailure, what) {}
};

// An internal guarantee did not hold.
class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what)
      : Error(ExitCode::kInvariantViolation, what) {}
};

}  // namespace gwdict
