#include "qbrach/linalg2.hpp"

#include <stdexcept>

#include "qbrach/errors.hpp"
#include "qbrach/tolerances.hpp"

namespace qbrach {

namespace {

void require_finite(const Matrix2& m, const char* who) {
  if (!is_finite(m)) {
    throw std::invalid_argument(std::string(who) +
                                ": matrix has non-finite entries");
  }
}

// sinh(phi)/phi, even in phi, with a series fallback near zero.
Complex sinhc(const Complex& phi, const Complex& phi_sq) {
  if (std::abs(phi) < tol::sinhc_series) {
    return 1.0 + phi_sq / 6.0 * (1.0 + phi_sq / 20.0);
  }
  return std::sinh(phi) / phi;
}

}  // namespace

Matrix2 inverse(const Matrix2& m) {
  require_finite(m, "inverse");
  const Complex d = m.det();
  if (std::abs(d) <= tol::singular_det) {
    throw SingularMatrix("inverse: |det| = " + std::to_string(std::abs(d)) +
                         " below threshold");
  }
  const Complex inv_d = 1.0 / d;
  return {inv_d * m.m11, -inv_d * m.m01, -inv_d * m.m10, inv_d * m.m00};
}

PauliDecomposition pauli_decompose(const Matrix2& m) {
  PauliDecomposition d;
  d.mu0 = 0.5 * (m.m00 + m.m11);
  d.mu[0] = 0.5 * (m.m01 + m.m10);
  d.mu[1] = 0.5 * Complex(0.0, 1.0) * (m.m01 - m.m10);
  d.mu[2] = 0.5 * (m.m00 - m.m11);
  return d;
}

Matrix2 pauli_recompose(const PauliDecomposition& d) {
  const Complex i(0.0, 1.0);
  return {d.mu0 + d.mu[2], d.mu[0] - i * d.mu[1], d.mu[0] + i * d.mu[1],
          d.mu0 - d.mu[2]};
}

Matrix2 exp_matrix(const Matrix2& m) {
  require_finite(m, "exp_matrix");
  const Complex mu0 = 0.5 * m.trace();
  // Traceless part V = M - mu0 I = [[a, b], [c, -a]]; V^2 = (a^2 + b c) I.
  const Complex a = 0.5 * (m.m00 - m.m11);
  const Complex b = m.m01;
  const Complex c = m.m10;
  const Complex phi_sq = a * a + b * c;

  const Complex scale = std::exp(mu0);

  if (std::abs(phi_sq) <= tol::exceptional_sq) {
    // Nilpotent traceless part: exp(V) = I + V exactly.
    return {scale * (1.0 + a), scale * b, scale * c, scale * (1.0 - a)};
  }

  const Complex phi = std::sqrt(phi_sq);
  const Complex ch = std::cosh(phi);
  const Complex sc = sinhc(phi, phi_sq);
  return {scale * (ch + sc * a), scale * (sc * b), scale * (sc * c),
          scale * (ch - sc * a)};
}

Eigen2 eigen2(const Matrix2& m) {
  require_finite(m, "eigen2");
  const Complex mid = 0.5 * m.trace();
  const Complex a = 0.5 * (m.m00 - m.m11);
  const Complex b = m.m01;
  const Complex c = m.m10;
  const Complex disc = a * a + b * c;  // (gap/2)^2

  if (std::abs(disc) <= tol::exceptional_sq) {
    throw ExceptionalPoint(
        "eigen2: eigenvalues coalesce (discriminant below threshold)");
  }

  // Principal sqrt has Re >= 0 (Re == 0 -> Im >= 0), which fixes the labeling.
  const Complex delta = std::sqrt(disc);

  Eigen2 out;
  out.val_plus = mid + delta;
  out.val_minus = mid - delta;

  const double ab = std::abs(b);
  const double ac = std::abs(c);
  if (ab < tol::exceptional_sq && ac < tol::exceptional_sq) {
    // Diagonal matrix: match each eigenvalue to its diagonal entry.
    const bool plus_is_first =
        std::abs(m.m00 - out.val_plus) <= std::abs(m.m11 - out.val_plus);
    out.vec_plus = plus_is_first ? Vector2{1.0, 0.0} : Vector2{0.0, 1.0};
    out.vec_minus = plus_is_first ? Vector2{0.0, 1.0} : Vector2{1.0, 0.0};
  } else if (ab >= ac) {
    // (V - lambda I) (b, lambda - a)^T = 0 with V traceless.
    out.vec_plus = {b, delta - a};
    out.vec_minus = {b, -delta - a};
  } else {
    out.vec_plus = {delta + a, c};
    out.vec_minus = {-delta + a, c};
  }

  out.vec_plus = (1.0 / norm(out.vec_plus)) * out.vec_plus;
  out.vec_minus = (1.0 / norm(out.vec_minus)) * out.vec_minus;
  return out;
}

}  // namespace qbrach
