#include "qbrach/metric.hpp"

#include <stdexcept>

#include "qbrach/errors.hpp"
#include "qbrach/tolerances.hpp"

namespace qbrach {

MetricOperator::MetricOperator(Complex alpha, const Matrix2& matrix,
                               const Matrix2& inverse)
    : alpha_(alpha), matrix_(matrix), inverse_(inverse) {
  hermitian_ = inf_norm(matrix_ - adjoint(matrix_)) <= tol::hermiticity;
}

MetricOperator eta_from_alpha(Complex alpha) {
  if (!is_finite(alpha)) {
    throw std::invalid_argument("eta_from_alpha: non-finite angle");
  }
  const Complex c = std::cos(alpha);
  if (std::abs(c) <= tol::metric_cos) {
    throw DegenerateMetric("eta_from_alpha: cos(alpha) vanishes");
  }
  const Complex i(0.0, 1.0);
  const Complex n = 1.0 / std::sqrt(c);
  const Complex sh = std::sin(0.5 * alpha);
  const Complex ch = std::cos(0.5 * alpha);
  const Matrix2 eta{n * sh, -i * n * ch, i * n * ch, n * sh};
  // det eta = -1 exactly, so the adjugate gives the inverse in closed form.
  const Matrix2 inv{-n * sh, -i * n * ch, i * n * ch, -n * sh};
  return MetricOperator(alpha, eta, inv);
}

Complex eta_inner(const MetricOperator& eta, const Vector2& f,
                  const Matrix2& op, const Vector2& i) {
  return std_inner(f, eta.squared() * (op * i));
}

Complex eta_inner(const MetricOperator& eta, const Vector2& f,
                  const Vector2& i) {
  return std_inner(f, eta.squared() * i);
}

double eta_norm(const MetricOperator& eta, const Vector2& psi) {
  return norm(eta.apply(psi));
}

SimilarityResult similarity_transform(const MetricOperator& eta,
                                      const Matrix2& hamiltonian) {
  SimilarityResult r;
  r.transformed = eta.matrix() * hamiltonian * eta.inverse_matrix();
  r.hermiticity_residual = inf_norm(r.transformed - adjoint(r.transformed));
  return r;
}

double pseudo_hermiticity_check(const MetricOperator& eta,
                                const Matrix2& hamiltonian) {
  const Matrix2 metric = eta.squared();
  const Matrix2 metric_inv = eta.inverse_matrix() * eta.inverse_matrix();
  return inf_norm(adjoint(hamiltonian) - metric * hamiltonian * metric_inv);
}

}  // namespace qbrach
