#include "qbrach/evolution.hpp"

#include <stdexcept>

#include "qbrach/errors.hpp"
#include "qbrach/tolerances.hpp"

namespace qbrach {

namespace {

constexpr Complex kI{0.0, 1.0};

double max_abs_entry(const Matrix2& m) {
  double out = std::abs(m.m00);
  out = std::max(out, std::abs(m.m01));
  out = std::max(out, std::abs(m.m10));
  out = std::max(out, std::abs(m.m11));
  return out;
}

Matrix2 simpson_slice(const Matrix2& fa, const Matrix2& fm, const Matrix2& fb,
                      double width) {
  return (width / 6.0) * (fa + 4.0 * fm + fb);
}

// Matrix-valued adaptive Simpson with per-entry absolute error control.
class AdaptiveSimpson {
 public:
  AdaptiveSimpson(std::function<Matrix2(double)> f, int split_budget)
      : f_(std::move(f)), splits_left_(split_budget) {}

  Matrix2 integrate(double a, double b, double eps) {
    const Matrix2 fa = eval(a);
    const Matrix2 fm = eval(0.5 * (a + b));
    const Matrix2 fb = eval(b);
    return refine(a, b, fa, fm, fb, simpson_slice(fa, fm, fb, b - a), eps);
  }

 private:
  Matrix2 eval(double s) {
    const Matrix2 v = f_(s);
    if (!is_finite(v)) {
      throw std::invalid_argument(
          "duhamel_first_order: integrand returned non-finite entries");
    }
    return v;
  }

  Matrix2 refine(double a, double b, const Matrix2& fa, const Matrix2& fm,
                 const Matrix2& fb, const Matrix2& whole, double eps) {
    const double mid = 0.5 * (a + b);
    const Matrix2 flm = eval(0.5 * (a + mid));
    const Matrix2 frm = eval(0.5 * (mid + b));
    const Matrix2 left = simpson_slice(fa, flm, fm, mid - a);
    const Matrix2 right = simpson_slice(fm, frm, fb, b - mid);
    const Matrix2 sum = left + right;
    const Matrix2 err = sum - whole;
    if (max_abs_entry(err) <= 15.0 * eps) {
      return sum + (1.0 / 15.0) * err;
    }
    if (--splits_left_ < 0) {
      throw QuadratureFailure(
          "duhamel_first_order: adaptive quadrature exhausted its "
          "subdivision budget");
    }
    return refine(a, mid, fa, flm, fm, left, 0.5 * eps) +
           refine(mid, b, fm, frm, fb, right, 0.5 * eps);
  }

  std::function<Matrix2(double)> f_;
  int splits_left_;
};

}  // namespace

Matrix2 evolution_operator(const Matrix2& generator, double t) {
  if (!std::isfinite(t)) {
    throw std::invalid_argument("evolution_operator: non-finite time");
  }
  return exp_matrix(Complex(0.0, -t) * generator);
}

Vector2 evolve(const Matrix2& generator, double t, const Vector2& psi) {
  if (!is_finite(psi)) {
    throw std::invalid_argument("evolve: non-finite state");
  }
  return evolution_operator(generator, t) * psi;
}

Matrix2 propagator(const EvolutionSpec& spec, double t) {
  switch (spec.kind) {
    case EvolutionKind::hermitian_u:
      if (inf_norm(spec.generator - adjoint(spec.generator)) >
          tol::hermiticity) {
        throw std::invalid_argument(
            "propagator: hermitian_u requested for a non-Hermitian "
            "generator");
      }
      return evolution_operator(spec.generator, t);
    case EvolutionKind::non_hermitian_U:
      return evolution_operator(spec.generator, t);
    case EvolutionKind::perturbative:
      if (!spec.perturbation) {
        throw std::invalid_argument(
            "propagator: perturbative evolution needs a perturbation "
            "function");
      }
      return duhamel_first_order(spec.generator, spec.perturbation,
                                 spec.coupling, t);
  }
  throw std::invalid_argument("propagator: unknown evolution kind");
}

Matrix2 step_evolution(const StepScenario& scenario, double t) {
  if (!std::isfinite(t) || t < 0.0 || !std::isfinite(scenario.window) ||
      scenario.window < 0.0) {
    throw std::invalid_argument("step_evolution: bad time arguments");
  }
  if (t <= scenario.window) {
    return evolution_operator(scenario.perturbed, t);
  }
  return evolution_operator(scenario.base, t - scenario.window) *
         evolution_operator(scenario.perturbed, scenario.window);
}

Matrix2 duhamel_first_order(const Matrix2& h, const TimeMatrixFn& h1, double g,
                            double t) {
  if (!is_finite(h) || !std::isfinite(g) || !std::isfinite(t)) {
    throw std::invalid_argument("duhamel_first_order: non-finite input");
  }
  if (t < 0.0) {
    throw std::invalid_argument("duhamel_first_order: requires t >= 0");
  }
  if (inf_norm(h - adjoint(h)) > tol::hermiticity) {
    throw std::invalid_argument(
        "duhamel_first_order: base generator must be Hermitian");
  }
  const Matrix2 zeroth = evolution_operator(h, t);
  if (g == 0.0 || t == 0.0) {
    return zeroth;
  }

  const auto integrand = [&](double s) {
    return evolution_operator(h, t - s) * h1(s) * evolution_operator(h, s);
  };
  AdaptiveSimpson quad(integrand, /*split_budget=*/1 << 16);
  const Matrix2 integral = quad.integrate(0.0, t, tol::quadrature_abs);
  return zeroth - (kI * g) * integral;
}

}  // namespace qbrach
