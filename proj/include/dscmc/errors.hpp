#pragma once

#include <stdexcept>
#include <string>

namespace dscmc {

/// Base of all library failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Point too close to a branch point/pole of the curve, or an invalid parameter.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Sheet residual |w^2 - R(z)| exceeded its tolerance during transport.
class ContinuationError : public Error {
 public:
  using Error::Error;
};

class StepLimitExceeded : public Error {
 public:
  using Error::Error;
};

class NotInSU11 : public Error {
 public:
  using Error::Error;
};

class PoleError : public Error {
 public:
  using Error::Error;
};

/// A period-function denominator vanished; the scan records a gap.
class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

/// A period value came out with a non-negligible imaginary part.
class FormViolation : public Error {
 public:
  using Error::Error;
};

class LostBracket : public Error {
 public:
  using Error::Error;
};

/// |f| <= 1: no gauge P(alpha, beta) exists.
class NotAdmissible : public Error {
 public:
  using Error::Error;
};

class VerificationFailed : public Error {
 public:
  VerificationFailed(int loop_index, double residual, const std::string& what)
      : Error(what), loop_index_(loop_index), residual_(residual) {}
  int loop_index() const { return loop_index_; }
  double residual() const { return residual_; }

 private:
  int loop_index_;
  double residual_;
};

/// Indicial exponent within tolerance of an integer (log-term case, unsupported).
class ResonantExponent : public Error {
 public:
  using Error::Error;
};

class EigenvalueMismatch : public Error {
 public:
  EigenvalueMismatch(double mismatch, const std::string& what)
      : Error(what), mismatch_(mismatch) {}
  double mismatch() const { return mismatch_; }

 private:
  double mismatch_;
};

class SingularPoint : public Error {
 public:
  using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

class DegeneratePoint : public Error {
 public:
  using Error::Error;
};

}  // namespace dscmc
