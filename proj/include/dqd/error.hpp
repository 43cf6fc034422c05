#pragma once

#include <stdexcept>
#include <string>

namespace dqd {

enum class ErrorKind {
  InvalidParameter,  // bad user input or violated precondition
  Validity,          // outside the model's validity window
  Numerical,         // numerical-domain failure (radicand, under-resolved quadrature)
  CpViolation,       // channel parameters break complete positivity
  Usage,             // CLI usage
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

// CLI exit codes: 0 ok, 2 usage, 3 numerical/validity, 4 acceptance failure.
int exit_code(ErrorKind kind) noexcept;

}  // namespace dqd
