#include <doctest.h>

#include <cmath>
#include <complex>

#include "qbrach/errors.hpp"
#include "qbrach/evolution.hpp"
#include "qbrach/metric.hpp"
#include "qbrach/models.hpp"
#include "support/oracles.hpp"

using qbrach::Complex;
using qbrach::Matrix2;
using qbrach::Vector2;

namespace {

constexpr double kPi = oracles::kPi;
constexpr Complex kI = oracles::kI;

bool close(const Complex& a, const Complex& b, double tol) {
  return std::abs(a - b) <= tol;
}

double diff(const Matrix2& a, const Matrix2& b) {
  return qbrach::inf_norm(a - b);
}

}  // namespace

TEST_CASE("zero-angle metric root is sigma_y and Hermitian") {
  const auto eta = qbrach::eta_from_alpha(0.0);
  const Matrix2 sigma_y{0.0, -kI, kI, 0.0};
  CHECK(diff(eta.matrix(), sigma_y) <= 1e-15);
  CHECK(eta.hermitian());
  CHECK(diff(eta.squared(), Matrix2::identity()) <= 1e-15);
}

TEST_CASE("metric root entries, determinant, and inverse at a real angle") {
  const double alpha = kPi / 6.0;
  const auto eta = qbrach::eta_from_alpha(alpha);
  const double scale = 1.0 / std::sqrt(std::cos(alpha));
  CHECK(close(eta.matrix().m00, scale * std::sin(0.5 * alpha), 1e-15));
  CHECK(close(eta.matrix().m01, -kI * scale * std::cos(0.5 * alpha), 1e-15));
  CHECK(close(eta.matrix().m10, kI * scale * std::cos(0.5 * alpha), 1e-15));
  CHECK(close(eta.matrix().m11, scale * std::sin(0.5 * alpha), 1e-15));
  CHECK(close(eta.matrix().det(), -1.0, 1e-15));
  CHECK(diff(eta.matrix() * eta.inverse_matrix(), Matrix2::identity()) <=
        1e-15);
  CHECK(eta.hermitian());
}

TEST_CASE("metric square equals its closed form for random real angles") {
  oracles::Rng rng(71u);
  for (int k = 0; k < 50; ++k) {
    const double alpha = rng.uniform(-1.4, 1.4);
    const auto eta = qbrach::eta_from_alpha(alpha);
    const double c = std::cos(alpha);
    const Matrix2 expected{1.0 / c, -kI * std::sin(alpha) / c,
                           kI * std::sin(alpha) / c, 1.0 / c};
    CHECK(diff(eta.squared(), expected) <= 1e-13 / c);
  }
}

TEST_CASE("complex angles give a non-Hermitian metric root") {
  const auto eta = qbrach::eta_from_alpha(Complex(0.3, 0.2));
  CHECK_FALSE(eta.hermitian());
  CHECK(close(eta.matrix().det(), -1.0, 1e-14));
  CHECK(diff(eta.matrix() * eta.inverse_matrix(), Matrix2::identity()) <=
        1e-14);
}

TEST_CASE("metric construction fails where cos(alpha) vanishes") {
  CHECK_THROWS_AS((void)qbrach::eta_from_alpha(0.5 * kPi),
                  qbrach::DegenerateMetric);
  CHECK_THROWS_AS((void)qbrach::eta_from_alpha(
                      Complex(std::numeric_limits<double>::infinity(), 0.0)),
                  std::invalid_argument);
}

TEST_CASE("metric pairing reduces to the standard product at angle zero") {
  const auto eta = qbrach::eta_from_alpha(0.0);
  const Vector2 a{Complex(1.0, 0.5), Complex(-0.3, 0.8)};
  const Vector2 b{Complex(0.2, -0.1), Complex(1.5, 0.4)};
  CHECK(close(qbrach::eta_inner(eta, a, b), qbrach::std_inner(a, b), 1e-14));
}

TEST_CASE("model eigenvectors are orthonormal under the metric pairing") {
  oracles::Rng rng(73u);
  for (int k = 0; k < 25; ++k) {
    const auto p = oracles::draw_pt_params(rng);
    const auto model = qbrach::pt_model(p.r, p.s, p.theta);
    const auto st = model.states();
    CHECK(close(qbrach::eta_inner(model.eta, st.Phi_plus, st.Phi_plus), 1.0,
                1e-12));
    CHECK(close(qbrach::eta_inner(model.eta, st.Phi_minus, st.Phi_minus), 1.0,
                1e-12));
    CHECK(close(qbrach::eta_inner(model.eta, st.Phi_plus, st.Phi_minus), 0.0,
                1e-12));
  }
}

TEST_CASE("metric pairing of evolved boundary states hits 1/cos(alpha)") {
  // At t = (pi + 2 alpha)/omega the magnitude of
  // <target | eta^2 U(t) initial> peaks at exactly 1/cos(alpha).
  const auto model = qbrach::pt_model(1.0, 2.0, kPi / 2.0);
  const auto bc = model.boundary_states();
  const double tau = (kPi + 2.0 * model.alpha) / model.omega;
  const Matrix2 u = qbrach::evolution_operator(model.hamiltonian, tau);
  const Complex el =
      qbrach::eta_inner(model.eta, bc.target, u, bc.initial);
  CHECK(std::abs(el) ==
        doctest::Approx(1.0 / std::cos(model.alpha)).epsilon(1e-12));
}

TEST_CASE("metric norms of the boundary states take their closed values") {
  const auto model = qbrach::pt_model(0.8, 1.5, 0.9);
  const auto bc = model.boundary_states();
  const double root = 1.0 / std::sqrt(std::cos(model.alpha));
  CHECK(qbrach::eta_norm(model.eta, bc.initial) ==
        doctest::Approx(root).epsilon(1e-13));
  CHECK(qbrach::eta_norm(model.eta, bc.target) ==
        doctest::Approx(root).epsilon(1e-13));
  // Eigen-frame states are metric-normalized.
  const auto st = model.states();
  CHECK(qbrach::eta_norm(model.eta, st.Phi_plus) ==
        doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("metric norm product for the complex-coupling boundary states") {
  const auto model = qbrach::dissipative_complex_model(
      2.0, 1.0, Complex(2.0, 1.5), Complex(0.4, 0.1));
  REQUIRE(model.eta.has_value());
  const auto bc = model.boundary_states();
  const Complex alpha = *model.alpha;
  const double expected =
      std::cosh(alpha.imag()) / std::abs(std::cos(alpha));
  const double product = qbrach::eta_norm(*model.eta, bc.initial) *
                         qbrach::eta_norm(*model.eta, bc.target);
  CHECK(product == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("squared metric norm matches the metric pairing for real angles") {
  oracles::Rng rng(79u);
  for (int k = 0; k < 25; ++k) {
    const double alpha = rng.uniform(-1.3, 1.3);
    const auto eta = qbrach::eta_from_alpha(alpha);
    const Vector2 psi{rng.complex_uniform(-1.0, 1.0),
                      rng.complex_uniform(-1.0, 1.0)};
    const double n = qbrach::eta_norm(eta, psi);
    const Complex pairing = qbrach::eta_inner(eta, psi, psi);
    CHECK(n * n == doctest::Approx(pairing.real()).epsilon(1e-12));
    CHECK(std::abs(pairing.imag()) <= 1e-13);
  }
}

TEST_CASE("similarity transform maps the balanced model to its Hermitian "
          "partner") {
  const auto model = qbrach::pt_model(1.0, 2.0, kPi / 4.0);
  const auto sim =
      qbrach::similarity_transform(model.eta, model.hamiltonian);
  CHECK(sim.hermiticity_residual <= 1e-12);
  const double rc = 1.0 * std::cos(kPi / 4.0);
  const Matrix2 expected{rc, -0.5 * model.omega, -0.5 * model.omega, rc};
  CHECK(diff(sim.transformed, expected) <= 1e-12);
}

TEST_CASE("similarity transform diagonalizes the decaying-detuned model") {
  const auto model =
      qbrach::dissipative_real_model(1.0, 1.2, 0.6, 0.8, 0.4, 0.7);
  const auto sim =
      qbrach::similarity_transform(model.eta, model.hamiltonian);
  CHECK(std::abs(sim.transformed.m01) <= 1e-12);
  CHECK(std::abs(sim.transformed.m10) <= 1e-12);
  CHECK(close(sim.transformed.m00, model.eps_minus, 1e-12));
  CHECK(close(sim.transformed.m11, model.eps_plus, 1e-12));
}

TEST_CASE("similarity transform brings the complex-coupling model to "
          "shifted sigma_x form") {
  const auto model = qbrach::dissipative_complex_model(
      0.5, 1.3, Complex(1.1, -0.6), Complex(0.35, 0.15));
  REQUIRE(model.eta.has_value());
  const auto sim =
      qbrach::similarity_transform(*model.eta, model.hamiltonian);
  const Complex shift = Complex(model.E, 0.0) - 0.5 * kI * model.lambda;
  const Matrix2 expected{shift, -0.5 * model.omega, -0.5 * model.omega,
                         shift};
  CHECK(diff(sim.transformed, expected) <= 1e-11);
  CHECK(diff(sim.transformed, model.transformed_hamiltonian) <= 1e-11);
}

TEST_CASE("pseudo-Hermiticity holds for Hermitian metrics and fails for "
          "complex angles") {
  const auto pt = qbrach::pt_model(1.0, 2.0, 1.0);
  CHECK(qbrach::pseudo_hermiticity_check(pt.eta, pt.hamiltonian) <= 1e-12);

  // theta = 0 makes the Hamiltonian Hermitian; any zero-angle metric works.
  const auto trivial = qbrach::eta_from_alpha(0.0);
  const Matrix2 hermitian_h = qbrach::pt_hamiltonian(1.0, 2.0, 0.0);
  CHECK(qbrach::pseudo_hermiticity_check(trivial, hermitian_h) <= 1e-12);

  // A genuinely complex angle: eta^2 is not a metric in the Dirac sense, so
  // the mechanical pseudo-Hermiticity relation must fail by a wide margin.
  const auto hat = qbrach::dissipative_complex_model(
      2.0, 1.0, Complex(3.49595, 2.26961), Complex(0.3, 0.0));
  REQUIRE(hat.eta.has_value());
  CHECK(qbrach::pseudo_hermiticity_check(*hat.eta, hat.hamiltonian) > 1e-8);
}
