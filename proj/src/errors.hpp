#pragma once

#include <stdexcept>
#include <string>

namespace specnorm {

// Base class for every error this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

// A NaN or infinity reached a public operation.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// A requested quantity does not fit in double range (e.g. t^n).
class OverflowError : public Error {
 public:
  using Error::Error;
};

class NoConvergenceError : public Error {
 public:
  using Error::Error;
};

// The scaling needed to reach the requested accuracy would make the
// transform too ill-conditioned to evaluate reliably.
class ConditioningExceededError : public Error {
 public:
  ConditioningExceededError(double t_required, double kappa_required,
                            double kappa_cap)
      : Error("conditioning cap exceeded: t=" + std::to_string(t_required) +
              " gives kappa=" + std::to_string(kappa_required) +
              " > cap=" + std::to_string(kappa_cap)),
        t(t_required),
        kappa(kappa_required),
        cap(kappa_cap) {}

  double t;
  double kappa;
  double cap;
};

// Disagreement dynamics cannot be certified: rho(M) is not below 1.
class NoSpectralGapError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line_, int column_)
      : Error("line " + std::to_string(line_) + ", column " +
              std::to_string(column_) + ": " + what),
        line(line_),
        column(column_) {}

  int line;
  int column;
};

// A certificate or report document is structurally malformed.
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace specnorm
