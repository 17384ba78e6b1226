#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace minvset {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroPolynomial : public Error {
 public:
  ZeroPolynomial() : Error("operation undefined for the zero polynomial") {}
};

class ZeroLeading : public Error {
 public:
  ZeroLeading() : Error("leading coefficient must be nonzero") {}
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ZeroOperator : public Error {
 public:
  ZeroOperator() : Error("operation undefined for the zero operator") {}
};

class NotExactlySolvable : public Error {
 public:
  NotExactlySolvable() : Error("operator is not exactly solvable") {}
};

class ResonantSpectrum : public Error {
 public:
  using Error::Error;
};

class DegreeTooHigh : public Error {
 public:
  using Error::Error;
};

class DegreeViolation : public Error {
 public:
  using Error::Error;
};

class ConstantLeadingCoefficient : public Error {
 public:
  ConstantLeadingCoefficient()
      : Error("leading coefficient is constant; fundamental polygon undefined") {}
};

class SingularRestriction : public Error {
 public:
  using Error::Error;
};

class ConstantPsi : public Error {
 public:
  ConstantPsi() : Error("T[(x-z)^n] is constant; every set is invariant") {}
};

class ZeroScale : public Error {
 public:
  ZeroScale() : Error("scale factor must be nonzero") {}
};

class EmptyCloud : public Error {
 public:
  EmptyCloud() : Error("point cloud is empty") {}
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class SeedFailure : public Error {
 public:
  using Error::Error;
};

class DegenerateImage : public Error {
 public:
  DegenerateImage() : Error("T(x-z) does not depend on z; no rational dynamics") {}
};

class DegreeTooLow : public Error {
 public:
  DegreeTooLow() : Error("rational map has degree < 2; no Julia dynamics") {}
};

class NoRepellingFixedPoint : public Error {
 public:
  NoRepellingFixedPoint() : Error("no repelling fixed point found") {}
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Root finding failed to reach the requested residual. Carries the best
/// iterate so callers can decide whether it is usable.
class NonConvergence : public Error {
 public:
  NonConvergence(std::string msg, std::vector<std::complex<double>> best, double residual)
      : Error(std::move(msg)), best_roots(std::move(best)), residual(residual) {}

  std::vector<std::complex<double>> best_roots;
  double residual = 0.0;
};

}  // namespace minvset
