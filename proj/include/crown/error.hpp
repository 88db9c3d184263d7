#pragma once

#include <stdexcept>
#include <string>

namespace crown {

/// Failure categories. The CLI maps each one onto a fixed exit code.
enum class ErrorKind {
  InvalidArgument,  // precondition on a plain argument (n = 0, |m| > l, ...)
  Schema,           // malformed or inconsistent input file
  Domain,           // crown / support violation, |x| > 1, Re q <= 0
  Pole,             // evaluation exactly at a pole (Gamma at 0, -1, ...)
  Singular,         // meromorphic quantity evaluated at a detected singularity
  Numerical,        // overflow, non-convergence, non-finite result
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::Singular: return "singular";
    case ErrorKind::Numerical: return "numerical";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace crown
