#pragma once

#include <stdexcept>
#include <string>

namespace qbrach {

// Base class for all domain errors thrown by this library. Callers that want
// a single catch site can catch `qbrach::Error`; everything below derives
// from it. Programming errors (non-finite inputs, out-of-range enum values)
// throw std::invalid_argument instead and are not part of this hierarchy.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Matrix inversion requested for a matrix with (numerically) zero determinant.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

// Eigen-decomposition requested at (or too close to) a point where the two
// eigenvalues coalesce and no eigenbasis can be labeled.
class ExceptionalPoint : public Error {
 public:
  using Error::Error;
};

// Metric construction requested where the metric normalization 1/cos(alpha)
// blows up (spontaneously broken regime boundary).
class DegenerateMetric : public Error {
 public:
  using Error::Error;
};

// PT-symmetric model parameters in the spontaneously broken regime
// (s^2 < r^2 sin^2 theta): eigenvalues form a complex-conjugate pair and the
// real-frequency construction does not apply.
class BrokenPtSymmetry : public Error {
 public:
  using Error::Error;
};

// Dissipative model parameters for which the advertised real characteristic
// frequency is actually complex.
class ComplexFrequency : public Error {
 public:
  using Error::Error;
};

// Dissipative model parameters with a negative decay width (amplifying
// instead of decaying); outside the modeled regime.
class NegativeDecayWidth : public Error {
 public:
  using Error::Error;
};

// The angle parameterization of the complex-coupling model degenerates
// (denominator of the angle-defining ratio vanishes).
class AhatSingular : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature failed to reach the requested tolerance within the
// subdivision budget.
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

// A closed-form passage time was requested for a formulation/level pair that
// has none.
class NoClosedForm : public Error {
 public:
  using Error::Error;
};

// The root finder exhausted its search window without a sign change or an
// acceptable tangency. Carries the best point seen so the caller can report
// how far away the amplitude stayed from the target level.
class NoRoot : public Error {
 public:
  NoRoot(const std::string& what, double min_abs_f, double t_at_min)
      : Error(what), min_abs_f_(min_abs_f), t_at_min_(t_at_min) {}

  double min_abs_f() const noexcept { return min_abs_f_; }
  double t_at_min() const noexcept { return t_at_min_; }

 private:
  double min_abs_f_;
  double t_at_min_;
};

}  // namespace qbrach
