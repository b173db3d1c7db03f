#pragma once

#include <stdexcept>
#include <string>

namespace ffprog {

enum class ErrorKind {
  NotPrime,
  TooLarge,
  ZeroElement,
  NotADivisor,
  NotADivisorPoly,
  ZeroPolynomial,
  BadDegree,
  NotNormal,
  CapExceeded,
  BadPosition,
  InvalidSpec,
  NonPositiveDelta,
  HypothesisFailed,
  ReplicationMismatch,
};

const char* to_string(ErrorKind kind) noexcept;

// Every recoverable failure of the library is reported through this type;
// the kind is what callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ffprog
