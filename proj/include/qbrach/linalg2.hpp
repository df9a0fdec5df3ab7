#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace qbrach {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Value types
// ---------------------------------------------------------------------------

struct Vector2 {
  Complex c0{};
  Complex c1{};
};

struct Matrix2 {
  Complex m00{};
  Complex m01{};
  Complex m10{};
  Complex m11{};

  static Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  Complex trace() const { return m00 + m11; }
  Complex det() const { return m00 * m11 - m01 * m10; }
};

// ---------------------------------------------------------------------------
// Arithmetic
// ---------------------------------------------------------------------------

inline Vector2 operator+(const Vector2& a, const Vector2& b) {
  return {a.c0 + b.c0, a.c1 + b.c1};
}

inline Vector2 operator-(const Vector2& a, const Vector2& b) {
  return {a.c0 - b.c0, a.c1 - b.c1};
}

inline Vector2 operator*(const Complex& s, const Vector2& v) {
  return {s * v.c0, s * v.c1};
}

inline Vector2 operator-(const Vector2& v) { return {-v.c0, -v.c1}; }

inline Matrix2 operator+(const Matrix2& a, const Matrix2& b) {
  return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}

inline Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
  return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
}

inline Matrix2 operator*(const Complex& s, const Matrix2& m) {
  return {s * m.m00, s * m.m01, s * m.m10, s * m.m11};
}

inline Matrix2 operator-(const Matrix2& m) {
  return {-m.m00, -m.m01, -m.m10, -m.m11};
}

inline Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
  return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
          a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

inline Vector2 operator*(const Matrix2& m, const Vector2& v) {
  return {m.m00 * v.c0 + m.m01 * v.c1, m.m10 * v.c0 + m.m11 * v.c1};
}

// ---------------------------------------------------------------------------
// Basic operations
// ---------------------------------------------------------------------------

// Standard inner product <a|b>, antilinear in the first argument.
inline Complex std_inner(const Vector2& a, const Vector2& b) {
  return std::conj(a.c0) * b.c0 + std::conj(a.c1) * b.c1;
}

// Euclidean 2-norm.
inline double norm(const Vector2& v) {
  return std::sqrt(std::norm(v.c0) + std::norm(v.c1));
}

inline Matrix2 adjoint(const Matrix2& m) {
  return {std::conj(m.m00), std::conj(m.m10), std::conj(m.m01),
          std::conj(m.m11)};
}

// Maximum absolute row sum.
inline double inf_norm(const Matrix2& m) {
  const double r0 = std::abs(m.m00) + std::abs(m.m01);
  const double r1 = std::abs(m.m10) + std::abs(m.m11);
  return r0 > r1 ? r0 : r1;
}

inline double inf_norm(const Vector2& v) {
  const double a0 = std::abs(v.c0);
  const double a1 = std::abs(v.c1);
  return a0 > a1 ? a0 : a1;
}

inline bool is_finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline bool is_finite(const Vector2& v) {
  return is_finite(v.c0) && is_finite(v.c1);
}

inline bool is_finite(const Matrix2& m) {
  return is_finite(m.m00) && is_finite(m.m01) && is_finite(m.m10) &&
         is_finite(m.m11);
}

// Inverse via the adjugate; throws SingularMatrix when |det| falls below
// tol::singular_det, std::invalid_argument on non-finite input.
Matrix2 inverse(const Matrix2& m);

// ---------------------------------------------------------------------------
// Pauli decomposition
// ---------------------------------------------------------------------------

// M = mu0 * I + mu[0] * sigma_x + mu[1] * sigma_y + mu[2] * sigma_z.
struct PauliDecomposition {
  Complex mu0{};
  std::array<Complex, 3> mu{};
};

PauliDecomposition pauli_decompose(const Matrix2& m);
Matrix2 pauli_recompose(const PauliDecomposition& d);

// ---------------------------------------------------------------------------
// Matrix exponential
// ---------------------------------------------------------------------------

// Closed-form exponential of an arbitrary complex 2x2 matrix. Splits off the
// trace part, M = mu0 I + V with V traceless, and uses
//   exp(V) = cosh(phi) I + (sinh(phi)/phi) V,  phi = sqrt(V contracted with
// itself through the Pauli vector), which is branch-independent because both
// coefficient functions are even. Handles the nilpotent case phi -> 0 via the
// sinh(phi)/phi series. Throws std::invalid_argument on non-finite input.
Matrix2 exp_matrix(const Matrix2& m);

// ---------------------------------------------------------------------------
// Eigen-decomposition
// ---------------------------------------------------------------------------

// Eigenpairs of a (generally non-normal) 2x2 matrix. `val_plus` is the
// eigenvalue trace/2 + delta with delta the principal square root of the
// quarter-discriminant, so Re(val_plus) >= Re(val_minus) with ties broken by
// larger imaginary part. Eigenvectors are unit 2-norm, not orthogonal in
// general.
struct Eigen2 {
  Complex val_plus{};
  Complex val_minus{};
  Vector2 vec_plus{};
  Vector2 vec_minus{};
};

// Throws ExceptionalPoint when the discriminant (eigenvalue gap squared)
// underflows tol::exceptional_sq — including for scalar multiples of the
// identity, where the eigenbasis is arbitrary. Throws std::invalid_argument
// on non-finite input.
Eigen2 eigen2(const Matrix2& m);

}  // namespace qbrach
