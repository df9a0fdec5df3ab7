#pragma once

#include <optional>
#include <variant>

#include "qbrach/linalg2.hpp"
#include "qbrach/metric.hpp"
#include "qbrach/models.hpp"

namespace qbrach {

// A formulation fixes the bra/ket state kinds, the evolution generator, the
// pairing (metric or standard), and the normalization of the defining
// amplitude equation  amplitude(t) = rhs.
//
//   QB    benchmark row: eigen-frame boundary pair, metric pairing; equals
//         the transformed-frame evolution with the standard inner product.
//         For the complex-coupling family this is the squared-amplitude
//         benchmark evolved by the sigma_x-form generator.
//   BC2   transformed-frame boundary pair evolved by the original generator,
//         metric pairing, metric norms.
//   BC    like BC2 but paired with the standard inner product and mixed
//         inverse-metric/metric norms; no closed form is published for it.
//   DF    initial transformed-frame state, final eigen-frame state.
//   DF2   initial eigen-frame state, final transformed-frame state.
//   QBNH  benchmark row of the dissipative-real family (eigen-frame pair).
//   GH    transformed-frame pair of the dissipative-real family.
//   TRANS metric-route squared-amplitude equation of the complex-coupling
//         family; its right-hand side is calibrated so that the benchmark
//         root sits at pi/Re(omega).
//
// Valid (family, formulation) pairs:
//   PtModel                 -> QB, BC2, BC, DF, DF2
//   DissipativeRealModel    -> QBNH, GH, DF, DF2
//   DissipativeComplexModel -> QB, TRANS
enum class Formulation { QB, BC2, BC, DF, DF2, QBNH, GH, TRANS };

enum class SolveMethod { analytic, numeric };

struct PassageTimeResult {
  double tau = 0.0;
  SolveMethod method = SolveMethod::analytic;
  // |amplitude(tau) - rhs| via the matrix-exponential route.
  double residual = 0.0;
  // Final bracketing interval (numeric results only).
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

struct AmplitudeMax {
  double beta_prime = 0.0;
  double t_at_max = 0.0;
};

// One passage-time problem: a model, a formulation valid for its family, and
// the target level. `level` is the beta-type constant of the defining
// equation, in [0, 1]:
//   - PT family: rhs = level.
//   - dissipative-real family: rhs = level * exp(-Gamma pi / (2 omega)).
//   - complex-coupling family: the level is fixed by the benchmark
//     calibration (rhs = beta_check(model), squared convention); the
//     two-argument constructor therefore takes no level.
class BrachistochroneProblem {
 public:
  BrachistochroneProblem(const PtModel& model, Formulation f, double level);
  BrachistochroneProblem(const DissipativeRealModel& model, Formulation f,
                         double level);
  BrachistochroneProblem(const DissipativeComplexModel& model, Formulation f);

  Formulation formulation() const { return formulation_; }
  double level() const { return level_; }
  // Constant right-hand side of the defining equation (squared convention
  // for the complex-coupling family).
  double rhs() const { return rhs_; }
  bool squared() const { return squared_; }
  double norm_product() const { return norm_product_; }

  // Raw (unnormalized) matrix element of the defining equation, evaluated
  // through the matrix exponential.
  Complex matrix_element(double t) const;

  // Normalized left-hand side of the defining equation at time t >= 0,
  // matrix-exponential route (squared when the formulation says so).
  double amplitude(double t) const;

  // Same quantity through the published closed form; throws NoClosedForm for
  // the BC formulation.
  double amplitude_closed(double t) const;

  // Oscillation frequency governing the default search window: omega,
  // omega-tilde, or Re(omega-hat).
  double omega_effective() const;
  // 8 pi / omega_effective: several oscillation periods.
  double default_t_max() const;

  const std::variant<PtModel, DissipativeRealModel, DissipativeComplexModel>&
  model() const {
    return model_;
  }

 private:
  void build_pt_recipe(const PtModel& m);
  void build_real_recipe(const DissipativeRealModel& m);
  void build_complex_recipe(const DissipativeComplexModel& m);

  std::variant<PtModel, DissipativeRealModel, DissipativeComplexModel> model_;
  Formulation formulation_;
  double level_;
  double rhs_ = 0.0;
  bool squared_ = false;

  // element(t) = std_inner(bra_eff_, pairing_ * exp(-i t generator_) * ket_),
  // with pairing_ = I when the formulation pairs by the standard product.
  Vector2 bra_eff_{};
  Vector2 ket_{};
  Matrix2 generator_{};
  std::optional<Matrix2> pairing_{};
  double norm_product_ = 1.0;
};

// Closed-form passage time of the formulation at the problem's level:
//   PT:  QB -> (2/omega) asin(level); BC2 -> (pi + 2 alpha)/omega and
//        DF/DF2 -> (2 pi + alpha)/omega at level 1 only; BC -> none.
//   dissipative-real: pi/omega at level 1 only.
//   complex-coupling: the benchmark point pi/Re(omega) for both QB and
//        TRANS; for TRANS the reported residual is generically nonzero (the
//        benchmark point solves the companion benchmark equation, not the
//        metric-route equation itself).
// Throws NoClosedForm where no formula exists.
PassageTimeResult passage_time_analytic(const BrachistochroneProblem& problem);

// Numeric passage time.
//   - Transversal regime (level < 1, and the TRANS equation): scans
//     f(t) = amplitude(t) - rhs on a uniform grid over (0, t_max], brackets
//     the first sign change, and bisects; when the grid never changes sign,
//     grid minima of |f| are polished (bisection on the derivative of the
//     squared amplitude) and accepted as tangencies when |f| stays within
//     tol::root_residual, otherwise NoRoot is thrown with diagnostics.
//   - Designed-root regime (level == 1 closed-form rows, and the
//     complex-coupling benchmark): the published root is a tangency or a
//     deliberately calibrated crossing that grid scanning cannot isolate
//     reliably, so the solver refines locally around the closed-form seed
//     through the matrix-exponential amplitude (bracket ladder, then
//     tangency polish); it still fails honestly (NoRoot) when the amplitude
//     does not actually meet the rhs there.
// Throws std::invalid_argument for t_max <= 0 or grid_n < 64.
PassageTimeResult passage_time_numeric(const BrachistochroneProblem& problem,
                                       double t_max, int grid_n);
// Defaults: t_max = default_t_max(), grid_n = 4096.
PassageTimeResult passage_time_numeric(const BrachistochroneProblem& problem);

// Maximum of the amplitude over [0, t_max]: grid scan plus golden-section
// refinement. Useful to certify an equation has no solution at a given level.
AmplitudeMax amplitude_max(const BrachistochroneProblem& problem, double t_max,
                           int grid_n);

// Calibrated squared level of the complex-coupling family: the value of the
// benchmark squared amplitude at t = pi/Re(omega),
//   (1/2) e^{-Re(lambda) pi/Re(omega)} [1 + cosh(pi Im(omega)/Re(omega))].
// Requires Re(omega) != 0.
double beta_check(const DissipativeComplexModel& model);

// The two sides of the published transcendental passage-time equation, in
// the exact arrangement used for the figures (lhs normalized by
// cosh^2(Im alpha) (1 + cosh(pi Im(omega)/Re(omega))), rhs exponential), and
// their difference rhs - lhs as plotted. Require the model angle and
// Re(omega) != 0.
double trans_lhs(const DissipativeComplexModel& model, double t);
double trans_rhs(const DissipativeComplexModel& model, double t);
double trans_residual(const DissipativeComplexModel& model, double t);

}  // namespace qbrach
