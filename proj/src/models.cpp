#include "qbrach/models.hpp"

#include <cmath>
#include <stdexcept>

#include "qbrach/errors.hpp"
#include "qbrach/tolerances.hpp"

namespace qbrach {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = 3.14159265358979323846;

void require_finite_params(std::initializer_list<double> xs, const char* who) {
  for (double x : xs) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string(who) +
                                  ": non-finite parameter");
    }
  }
}

void require_finite_params(std::initializer_list<Complex> xs,
                           const char* who) {
  for (const Complex& x : xs) {
    if (!is_finite(x)) {
      throw std::invalid_argument(std::string(who) +
                                  ": non-finite parameter");
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// State builders
// ---------------------------------------------------------------------------

Vector2 phi_plus() {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return {kI * inv_sqrt2, -kI * inv_sqrt2};
}

Vector2 phi_minus() {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return {inv_sqrt2, inv_sqrt2};
}

Vector2 Phi_plus(Complex alpha) {
  const Complex c = std::cos(alpha);
  if (std::abs(c) <= tol::metric_cos) {
    throw DegenerateMetric("Phi_plus: cos(alpha) vanishes");
  }
  const Complex n = 1.0 / std::sqrt(2.0 * c);
  return {-n * std::exp(kI * 0.5 * alpha), -n * std::exp(-kI * 0.5 * alpha)};
}

Vector2 Phi_minus(Complex alpha) {
  const Complex c = std::cos(alpha);
  if (std::abs(c) <= tol::metric_cos) {
    throw DegenerateMetric("Phi_minus: cos(alpha) vanishes");
  }
  const Complex n = kI / std::sqrt(2.0 * c);
  return {-n * std::exp(-kI * 0.5 * alpha), n * std::exp(kI * 0.5 * alpha)};
}

// ---------------------------------------------------------------------------
// PT-symmetric family
// ---------------------------------------------------------------------------

Matrix2 pt_hamiltonian(double r, double s, double theta) {
  require_finite_params({r, s, theta}, "pt_hamiltonian");
  return {r * std::exp(kI * theta), s, s, r * std::exp(-kI * theta)};
}

PtModel pt_model(double r, double s, double theta) {
  require_finite_params({r, s, theta}, "pt_model");
  if (s <= 0.0) {
    throw std::invalid_argument(
        "pt_model: requires s > 0 (for s < 0 use theta -> -theta; the "
        "similarity triple flips sign otherwise)");
  }
  const double rs = r * std::sin(theta);
  const double disc = s * s - rs * rs;
  if (disc < 0.0) {
    throw BrokenPtSymmetry(
        "pt_model: s^2 < r^2 sin^2 theta (spontaneously broken regime, "
        "complex conjugate spectrum)");
  }
  const double sin_alpha = std::min(1.0, std::max(-1.0, rs / s));
  const double alpha = std::asin(sin_alpha);
  const double omega = 2.0 * std::sqrt(disc);
  const double rc = r * std::cos(theta);
  return PtModel{
      r,
      s,
      theta,
      omega,
      alpha,
      pt_hamiltonian(r, s, theta),
      Matrix2{rc, -0.5 * omega, -0.5 * omega, rc},
      eta_from_alpha(Complex(alpha)),
      /*eps_plus=*/rc + 0.5 * omega,
      /*eps_minus=*/rc - 0.5 * omega,
  };
}

Eigenstates PtModel::states() const {
  Eigenstates es;
  es.Phi_plus = qbrach::Phi_plus(alpha);
  es.Phi_minus = qbrach::Phi_minus(alpha);
  es.phi_plus = qbrach::phi_plus();
  es.phi_minus = qbrach::phi_minus();
  return es;
}

StatePair PtModel::boundary_states() const {
  return {Vector2{1.0, 0.0}, Vector2{0.0, 1.0}};
}

// ---------------------------------------------------------------------------
// Dissipative family, real characteristic frequency
// ---------------------------------------------------------------------------

Matrix2 dissipative_real_hamiltonian(double E, double eps, double r, double s,
                                     double theta, Complex lambda) {
  require_finite_params({E, eps, r, s, theta}, "dissipative_real_hamiltonian");
  require_finite_params({lambda}, "dissipative_real_hamiltonian");
  const Complex il = kI * lambda;
  return {E + eps - il * r * std::exp(kI * theta), -il * s, -il * s,
          E - eps - il * r * std::exp(-kI * theta)};
}

DissipativeRealModel dissipative_real_model(double E, double eps, double r,
                                            double s, double theta,
                                            double lambda) {
  require_finite_params({E, eps, r, s, theta, lambda},
                        "dissipative_real_model");
  if (s == 0.0) {
    throw std::invalid_argument("dissipative_real_model: requires s != 0");
  }
  if (std::abs(theta) > 0.5 * kPi) {
    throw std::invalid_argument(
        "dissipative_real_model: requires -pi/2 <= theta <= pi/2 (decay "
        "regime)");
  }
  const double a = eps + r * lambda * std::sin(theta);
  if (a <= 0.0) {
    throw std::invalid_argument(
        "dissipative_real_model: requires eps + r lambda sin theta > 0 (the "
        "angle parameterization needs a positive denominator)");
  }
  const double ls = lambda * s;
  const double disc = a * a - ls * ls;
  if (disc < 0.0) {
    throw ComplexFrequency(
        "dissipative_real_model: (eps + r lambda sin theta)^2 < lambda^2 s^2 "
        "(characteristic frequency is complex)");
  }
  const double gamma = 2.0 * r * lambda * std::cos(theta);
  if (gamma < 0.0) {
    throw NegativeDecayWidth(
        "dissipative_real_model: decay width 2 r lambda cos theta < 0");
  }
  const double sin_alpha = std::min(1.0, std::max(-1.0, ls / a));
  const double alpha = std::asin(sin_alpha);
  const double omega = 2.0 * std::sqrt(disc);
  const Complex mid = E - 0.5 * kI * gamma;
  const Complex eps_plus = mid + 0.5 * omega;
  const Complex eps_minus = mid - 0.5 * omega;
  return DissipativeRealModel{
      E,
      eps,
      r,
      s,
      theta,
      lambda,
      omega,
      alpha,
      gamma,
      dissipative_real_hamiltonian(E, eps, r, s, theta, lambda),
      Matrix2{eps_minus, 0.0, 0.0, eps_plus},
      eta_from_alpha(Complex(alpha)),
      eps_plus,
      eps_minus,
  };
}

Eigenstates DissipativeRealModel::states() const {
  const Vector2 p = qbrach::Phi_plus(alpha);
  const Vector2 q = qbrach::Phi_minus(alpha);
  const Complex n = 1.0 / std::sqrt(2.0);
  Eigenstates es;
  es.Phi_plus = n * (q + kI * p);
  es.Phi_minus = n * (q - kI * p);
  es.phi_plus = {0.0, 1.0};
  es.phi_minus = {1.0, 0.0};
  return es;
}

StatePair DissipativeRealModel::boundary_states() const {
  const Complex n = 1.0 / std::sqrt(2.0);
  return {Vector2{n, -kI * n}, Vector2{n, kI * n}};
}

// ---------------------------------------------------------------------------
// Dissipative family, complex characteristic frequency
// ---------------------------------------------------------------------------

Matrix2 dissipative_complex_hamiltonian(double E, double eps, Complex lambda,
                                        Complex phi) {
  require_finite_params({E, eps}, "dissipative_complex_hamiltonian");
  require_finite_params({lambda, phi}, "dissipative_complex_hamiltonian");
  const Complex half_il = 0.5 * kI * lambda;
  const Complex c2 = std::cos(2.0 * phi);
  const Complex s2 = std::sin(2.0 * phi);
  return {E + eps - half_il * (1.0 + c2), -half_il * s2, -half_il * s2,
          E - eps - half_il * (1.0 - c2)};
}

DissipativeComplexModel dissipative_complex_model(double E, double eps,
                                                  Complex lambda,
                                                  Complex phi) {
  require_finite_params({E, eps}, "dissipative_complex_model");
  require_finite_params({lambda, phi}, "dissipative_complex_model");
  const Complex c2 = std::cos(2.0 * phi);
  const Complex s2 = std::sin(2.0 * phi);
  const Complex omega = std::sqrt(4.0 * eps * eps - lambda * lambda -
                                  4.0 * kI * eps * lambda * c2);
  const Complex mid = E - 0.5 * kI * lambda;

  DissipativeComplexModel m;
  m.E = E;
  m.eps = eps;
  m.lambda = lambda;
  m.phi = phi;
  m.omega = omega;
  m.hamiltonian = dissipative_complex_hamiltonian(E, eps, lambda, phi);
  m.transformed_hamiltonian = {mid, -0.5 * omega, -0.5 * omega, mid};
  m.eps_plus = mid + 0.5 * omega;
  m.eps_minus = mid - 0.5 * omega;

  const Complex numerator = -kI * lambda * s2;
  if (std::abs(numerator) > tol::metric_cos) {
    const Complex den = 2.0 * eps + omega - kI * lambda * c2;
    if (std::abs(den) <= tol::metric_cos) {
      throw AhatSingular(
          "dissipative_complex_model: angle-defining denominator "
          "2 eps + omega - i lambda cos 2phi vanishes");
    }
    // e^{-i alpha} = numerator / den fixes alpha = i Log(numerator/den).
    const Complex z = numerator / den;
    const Complex alpha = kI * std::log(z);
    m.alpha = alpha;
    m.eta = eta_from_alpha(alpha);
  }
  return m;
}

Eigenstates DissipativeComplexModel::states() const {
  if (!alpha.has_value()) {
    throw AhatSingular(
        "DissipativeComplexModel::states: eigenvector angle undefined "
        "(lambda sin 2phi vanishes; the Hamiltonian is already diagonal)");
  }
  Eigenstates es;
  es.Phi_plus = qbrach::Phi_plus(*alpha);
  es.Phi_minus = qbrach::Phi_minus(*alpha);
  es.phi_plus = qbrach::phi_plus();
  es.phi_minus = qbrach::phi_minus();
  return es;
}

StatePair DissipativeComplexModel::boundary_states() const {
  return {Vector2{1.0, 0.0}, Vector2{0.0, 1.0}};
}

std::pair<Complex, Complex> lambda_from_omega(double eps, Complex phi,
                                              Complex omega) {
  require_finite_params({eps}, "lambda_from_omega");
  require_finite_params({phi, omega}, "lambda_from_omega");
  const Complex c2 = std::cos(2.0 * phi);
  const Complex s2 = std::sin(2.0 * phi);
  const Complex root =
      std::sqrt(4.0 * eps * eps * s2 * s2 - omega * omega);
  const Complex base = -2.0 * kI * eps * c2;
  return {base + root, base - root};
}

}  // namespace qbrach
