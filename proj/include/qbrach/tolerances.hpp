#pragma once

// Central numerical thresholds. Every magic tolerance used by the library
// lives here with a note on what it guards; tests pin their own acceptance
// tolerances separately and independently.

namespace qbrach::tol {

// ||M - M^dagger||_inf below which a matrix is treated as Hermitian
// (metric flag, first-order-propagator precondition).
inline constexpr double hermiticity = 1e-12;

// |det| below which inversion refuses to proceed.
inline constexpr double singular_det = 1e-14;

// |phi^2| (squared traceless-part discriminant) below which the two
// eigenvalues are considered coalesced. Expressed on the squared quantity so
// the effective eigenvalue-gap threshold is ~1e-12 for O(1) matrices.
inline constexpr double exceptional_sq = 1e-24;

// |cos alpha| below which the metric normalization 1/sqrt(cos alpha) is
// considered degenerate.
inline constexpr double metric_cos = 1e-12;

// |phi| below which sinh(phi)/phi switches to its Taylor series
// (1 + phi^2/6 + phi^4/120); at 1e-4 the truncation error is ~1e-25.
inline constexpr double sinhc_series = 1e-4;

// Residual |f(t*)| (relative to max(1, level)) accepted when a tangency is
// promoted to a root.
inline constexpr double root_residual = 1e-9;

// Bisection interval width at which root polishing stops.
inline constexpr double root_interval = 1e-13;

// Per-entry absolute tolerance for the adaptive Simpson quadrature used by
// the first-order propagator.
inline constexpr double quadrature_abs = 1e-10;

}  // namespace qbrach::tol
