#pragma once

#include <functional>

#include "qbrach/linalg2.hpp"

namespace qbrach {

// U(t) = exp(-i t G) for an arbitrary (not necessarily Hermitian) generator.
Matrix2 evolution_operator(const Matrix2& generator, double t);

// exp(-i t G) psi.
Vector2 evolve(const Matrix2& generator, double t, const Vector2& psi);

using TimeMatrixFn = std::function<Matrix2(double)>;

enum class EvolutionKind { hermitian_u, non_hermitian_U, perturbative };

// A tagged evolution request. `hermitian_u` asserts (and verifies) that the
// generator is Hermitian, `non_hermitian_U` evolves any generator exactly,
// `perturbative` evolves generator + coupling * perturbation(t) to first
// order in the coupling.
struct EvolutionSpec {
  Matrix2 generator;
  EvolutionKind kind = EvolutionKind::non_hermitian_U;
  double coupling = 0.0;       // perturbative only
  TimeMatrixFn perturbation;   // perturbative only
};

// The propagator U(t) of the spec. Throws std::invalid_argument when
// hermitian_u is requested for a generator whose Hermiticity residual
// exceeds tol::hermiticity, or when perturbative is requested without a
// perturbation function.
Matrix2 propagator(const EvolutionSpec& spec, double t);

// Piecewise-constant generator: `perturbed` acts on [0, window), `base`
// afterwards. step_evolution returns the full propagator from 0 to t.
struct StepScenario {
  Matrix2 perturbed;
  Matrix2 base;
  double window;
};

Matrix2 step_evolution(const StepScenario& scenario, double t);

// First-order time-dependent perturbation around a Hermitian base generator:
//   U1(t) = e^{-i h t} - i g Integral_0^t e^{-i h (t-s)} h1(s) e^{-i h s} ds,
// with the integral evaluated per-entry by adaptive Simpson quadrature to
// tol::quadrature_abs. The truncation error of U1 against the exact
// propagator of h + g h1 scales as g^2.
//
// Throws std::invalid_argument when `h` is not Hermitian within
// tol::hermiticity or on non-finite input, QuadratureFailure when the
// subdivision budget is exhausted.
Matrix2 duhamel_first_order(const Matrix2& h, const TimeMatrixFn& h1, double g,
                            double t);

}  // namespace qbrach
