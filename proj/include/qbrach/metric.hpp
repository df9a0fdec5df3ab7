#pragma once

#include "qbrach/linalg2.hpp"

namespace qbrach {

// The positive-definite (or, for complex angle, merely invertible) operator
// eta that intertwines a non-Hermitian Hamiltonian with its Hermitian
// counterpart: eta H eta^-1 = h. Immutable after construction.
class MetricOperator {
 public:
  MetricOperator(Complex alpha, const Matrix2& matrix, const Matrix2& inverse);

  Complex alpha() const { return alpha_; }
  const Matrix2& matrix() const { return matrix_; }
  const Matrix2& inverse_matrix() const { return inverse_; }

  // eta^2, the metric itself.
  Matrix2 squared() const { return matrix_ * matrix_; }

  // True when ||eta - eta^dagger||_inf <= tol::hermiticity. Real angles give
  // Hermitian eta; complex angles (complex-coupling family) do not.
  bool hermitian() const { return hermitian_; }

  Vector2 apply(const Vector2& v) const { return matrix_ * v; }
  Vector2 apply_inverse(const Vector2& v) const { return inverse_ * v; }

 private:
  Complex alpha_;
  Matrix2 matrix_;
  Matrix2 inverse_;
  bool hermitian_;
};

// Builds the half-angle metric square root
//   eta(alpha) = (1/sqrt(cos alpha)) [[ sin(alpha/2), -i cos(alpha/2)],
//                                     [ i cos(alpha/2),  sin(alpha/2)]],
// which satisfies det eta = -1 and
//   eta^2 = (1/cos alpha) [[1, -i sin alpha], [i sin alpha, 1]].
// Accepts complex alpha. Throws DegenerateMetric when |cos alpha| falls below
// tol::metric_cos, std::invalid_argument on non-finite alpha.
MetricOperator eta_from_alpha(Complex alpha);

// Mechanical metric pairing <f | eta^2 O | i> (O defaults to the identity).
// Antilinear in `f` through the standard inner product; for Hermitian eta this
// equals <eta f | eta O i>.
Complex eta_inner(const MetricOperator& eta, const Vector2& f,
                  const Matrix2& op, const Vector2& i);
Complex eta_inner(const MetricOperator& eta, const Vector2& f,
                  const Vector2& i);

// Norm of a state in the metric-transformed picture: |eta psi|. For Hermitian
// eta this equals sqrt(<psi|eta^2 psi>); for complex angles it is the
// definition under which the transformed picture is an honest Hilbert space.
double eta_norm(const MetricOperator& eta, const Vector2& psi);

struct SimilarityResult {
  Matrix2 transformed;           // eta H eta^-1
  double hermiticity_residual;   // ||transformed - transformed^dagger||_inf
};

SimilarityResult similarity_transform(const MetricOperator& eta,
                                      const Matrix2& hamiltonian);

// ||H^dagger - eta^2 H eta^-2||_inf: zero (to roundoff) exactly when H is
// pseudo-Hermitian with respect to the metric eta^2.
double pseudo_hermiticity_check(const MetricOperator& eta,
                                const Matrix2& hamiltonian);

}  // namespace qbrach
