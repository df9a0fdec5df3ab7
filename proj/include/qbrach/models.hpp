#pragma once

#include <optional>
#include <utility>

#include "qbrach/linalg2.hpp"
#include "qbrach/metric.hpp"

namespace qbrach {

// ---------------------------------------------------------------------------
// Shared state builders
// ---------------------------------------------------------------------------

// Eigenvectors of the sigma_x-form transformed Hamiltonians, independent of
// any model parameter: phi_plus = (i/sqrt2)(1, -1)^T pairs with the upper
// level, phi_minus = (1/sqrt2)(1, 1)^T with the lower one.
Vector2 phi_plus();
Vector2 phi_minus();

// Eigenvectors of the original (untransformed) Hamiltonians, parameterized by
// the metric angle: Phi_pm(alpha) = eta(alpha)^-1 phi_pm. Accepts complex
// angles; throws DegenerateMetric when cos(alpha) vanishes.
Vector2 Phi_plus(Complex alpha);
Vector2 Phi_minus(Complex alpha);

// The plus/minus eigenvector pair of a model Hamiltonian together with its
// image under the model's metric root (the transformed-frame pair).
struct Eigenstates {
  Vector2 Phi_plus;
  Vector2 Phi_minus;
  Vector2 phi_plus;   // eta * Phi_plus
  Vector2 phi_minus;  // eta * Phi_minus
};

// Initial and target states of a passage-time problem, expressed in the frame
// the formulation evolves in.
struct StatePair {
  Vector2 initial;
  Vector2 target;
};

// ---------------------------------------------------------------------------
// PT-symmetric family
// ---------------------------------------------------------------------------

// H = [[r e^{i theta}, s], [s, r e^{-i theta}]] with real r, s > 0, theta.
// In the unbroken regime s^2 > r^2 sin^2 theta the spectrum is real:
//   eps_pm = r cos theta +/- omega/2,  omega = 2 sqrt(s^2 - r^2 sin^2 theta),
// and eta(alpha) with sin alpha = (r/s) sin theta maps H to the Hermitian
//   h = r cos theta I - (omega/2) sigma_x.
struct PtModel {
  double r;
  double s;
  double theta;
  double omega;
  double alpha;
  Matrix2 hamiltonian;
  Matrix2 transformed_hamiltonian;
  MetricOperator eta;
  double eps_plus;
  double eps_minus;

  Eigenstates states() const;
  // Transformed-frame basis states (1,0) -> (0,1).
  StatePair boundary_states() const;
};

// Throws std::invalid_argument for non-finite input or s <= 0 (for s < 0 the
// advertised similarity triple does not hold; use theta -> -theta instead),
// BrokenPtSymmetry when s^2 < r^2 sin^2 theta, DegenerateMetric on the
// boundary.
PtModel pt_model(double r, double s, double theta);

// The bare Hamiltonian matrix, without regime checks.
Matrix2 pt_hamiltonian(double r, double s, double theta);

// ---------------------------------------------------------------------------
// Dissipative family, real characteristic frequency
// ---------------------------------------------------------------------------

// H = diag(E+eps, E-eps) - i lambda [[r e^{i theta}, s], [s, r e^{-i theta}]].
// With a = eps + r lambda sin theta > 0 and a^2 >= lambda^2 s^2 the
// characteristic frequency omega = 2 sqrt(a^2 - lambda^2 s^2) is real, the
// decay width is Gamma = 2 r lambda cos theta, sin alpha = lambda s / a, and
// eta(alpha) maps H to the diagonal
//   h = diag(E - omega/2 - i Gamma/2, E + omega/2 - i Gamma/2).
struct DissipativeRealModel {
  double E;
  double eps;
  double r;
  double s;
  double theta;
  double lambda;
  double omega;
  double alpha;
  double gamma;  // decay width
  Matrix2 hamiltonian;
  Matrix2 transformed_hamiltonian;
  MetricOperator eta;
  Complex eps_plus;   // E + omega/2 - i gamma/2
  Complex eps_minus;  // E - omega/2 - i gamma/2

  Eigenstates states() const;
  // Equal-weight superpositions (1, -i)/sqrt2 -> (1, +i)/sqrt2.
  StatePair boundary_states() const;
};

// Throws std::invalid_argument for non-finite input or
// eps + r lambda sin theta <= 0 (the angle parameterization presupposes a
// positive denominator), ComplexFrequency when a^2 < lambda^2 s^2,
// NegativeDecayWidth when Gamma < 0, DegenerateMetric on the frequency-zero
// boundary.
DissipativeRealModel dissipative_real_model(double E, double eps, double r,
                                            double s, double theta,
                                            double lambda);

// Bare Hamiltonian, no regime checks; lambda may be complex so boundary
// behaviour (e.g. lambda -> i) can be probed directly.
Matrix2 dissipative_real_hamiltonian(double E, double eps, double r, double s,
                                     double theta, Complex lambda);

// ---------------------------------------------------------------------------
// Dissipative family, complex characteristic frequency
// ---------------------------------------------------------------------------

// H = diag(E+eps, E-eps) - (i lambda/2) [[1 + cos 2phi, sin 2phi],
//                                        [sin 2phi, 1 - cos 2phi]]
// with complex lambda, phi. The characteristic frequency
//   omega = sqrt(4 eps^2 - lambda^2 - 4 i eps lambda cos 2phi)
// (principal branch) is generally complex; the metric angle alpha solves
// sin alpha = (2 eps - i lambda cos 2phi)/(lambda sin 2phi) and
// cos alpha = i omega / (lambda sin 2phi), fixed uniquely by
//   e^{-i alpha} = -i lambda sin 2phi / (2 eps + omega - i lambda cos 2phi).
// eta(alpha) (non-Hermitian here) maps H to
//   h = (E - i lambda/2) I - (omega/2) sigma_x.
struct DissipativeComplexModel {
  double E;
  double eps;
  Complex lambda;
  Complex phi;
  Complex omega;
  // Empty when lambda sin 2phi vanishes (already-diagonal Hamiltonian, no
  // angle parameterization); h stays well-defined and isospectral.
  std::optional<Complex> alpha;
  Matrix2 hamiltonian;
  Matrix2 transformed_hamiltonian;
  std::optional<MetricOperator> eta;
  Complex eps_plus;   // E + omega/2 - i lambda/2
  Complex eps_minus;  // E - omega/2 - i lambda/2

  // Requires the angle; throws AhatSingular when it is undefined.
  Eigenstates states() const;
  // Transformed-frame basis states (1,0) -> (0,1).
  StatePair boundary_states() const;
};

// Throws std::invalid_argument on non-finite input, AhatSingular when the
// angle-defining denominator 2 eps + omega - i lambda cos 2phi vanishes,
// DegenerateMetric when cos(alpha) vanishes.
DissipativeComplexModel dissipative_complex_model(double E, double eps,
                                                  Complex lambda, Complex phi);

Matrix2 dissipative_complex_hamiltonian(double E, double eps, Complex lambda,
                                        Complex phi);

// Inverts omega(lambda) at fixed eps, phi: the two solutions of
//   lambda^2 + 4 i eps cos(2phi) lambda + (omega^2 - 4 eps^2) = 0,
// returned with the root -2 i eps cos 2phi + sqrt(4 eps^2 sin^2 2phi -
// omega^2) first (the branch matching the published parameter sets).
std::pair<Complex, Complex> lambda_from_omega(double eps, Complex phi,
                                              Complex omega);

}  // namespace qbrach
