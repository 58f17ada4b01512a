#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>

#include <cmath>
#include <numbers>

#include "fnls/closed_form.hpp"

using namespace fnls;

namespace {

constexpr double kPi = std::numbers::pi;

double quadrature_K(double kappa) {
  const auto f = [kappa](double t) {
    const double s = std::sin(t);
    return 1.0 / std::sqrt(1.0 - kappa * kappa * s * s);
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, kPi / 2, 15, 1e-15);
}

}  // namespace

TEST_CASE("elliptic_K special values") {
  CHECK(elliptic_K(0.0) == doctest::Approx(kPi / 2).epsilon(1e-15));
  // Boost's ellint_1 (Carlson forms) as an independent reference.
  CHECK(std::abs(elliptic_K(0.5) - 1.685750354812596) < 1e-13);
  CHECK(std::abs(elliptic_K(0.5) - boost::math::ellint_1(0.5)) < 1e-13);
  CHECK(std::abs(elliptic_K(0.99) - boost::math::ellint_1(0.99)) < 1e-13);
  CHECK(elliptic_K(0.9) > elliptic_K(0.5));
  CHECK_THROWS_AS(elliptic_K(1.0), std::domain_error);
  CHECK_THROWS_AS(elliptic_K(-0.1), std::domain_error);
  CHECK_THROWS_AS(jacobi_dn(0.3, 1.0), std::domain_error);
}

TEST_CASE("elliptic_K is strictly increasing") {
  double prev = elliptic_K(0.0);
  for (int i = 1; i < 100; ++i) {
    const double k = elliptic_K(i / 100.0);
    CHECK(k > prev);
    prev = k;
  }
}

TEST_CASE("AGM value of K agrees with quadrature of the defining integral") {
  for (double kappa : {0.1, 0.5, 0.9}) {
    CHECK(std::abs(elliptic_K(kappa) - quadrature_K(kappa)) < 1e-10);
  }
}

TEST_CASE("complementary-modulus entry points keep precision near kappa = 1") {
  const double kp = 1e-6;
  // K ~ ln(4 / kappa') for small kappa'
  CHECK(elliptic_K_c(kp) == doctest::Approx(std::log(4.0 / kp)).epsilon(1e-10));
  CHECK(std::abs(elliptic_K_c(0.3) - boost::math::ellint_1(std::sqrt(1 - 0.09))) < 1e-13);
  CHECK(jacobi_elliptic_c(elliptic_K_c(kp), kp).dn == doctest::Approx(kp).epsilon(1e-9));
}

TEST_CASE("Jacobi dn identities") {
  for (double kappa : {0.0, 0.3, 0.7, 0.95, 0.999}) {
    CHECK(jacobi_dn(0.0, kappa) == doctest::Approx(1.0).epsilon(1e-15));
    const double k = elliptic_K(kappa);
    CHECK(std::abs(jacobi_dn(k, kappa) - std::sqrt(1 - kappa * kappa)) < 1e-12);
    CHECK(std::abs(jacobi_dn(2 * k, kappa) - 1.0) < 1e-12);
  }
  for (double u : {-3.0, 0.2, 1.0, 7.5}) CHECK(jacobi_dn(u, 0.0) == 1.0);
}

TEST_CASE("sn, cn, dn agree with Boost and satisfy the quadratic identities") {
  for (double kappa : {0.1, 0.5, 0.9, 0.99}) {
    for (int i = -40; i <= 40; ++i) {
      const double u = 0.173 * i;
      const JacobiValues v = jacobi_elliptic(u, kappa);
      CHECK(std::abs(v.dn - boost::math::jacobi_dn(kappa, u)) < 1e-12);
      CHECK(std::abs(v.sn - boost::math::jacobi_sn(kappa, u)) < 1e-12);
      CHECK(std::abs(v.cn - boost::math::jacobi_cn(kappa, u)) < 1e-12);
      CHECK(std::abs(v.dn * v.dn + kappa * kappa * v.sn * v.sn - 1.0) < 1e-10);
      CHECK(std::abs(v.sn * v.sn + v.cn * v.cn - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("dn_solution_params at omega = 1 solves both constraints") {
  const DnParams p = dn_solution_params(1.0);
  CHECK(std::abs(p.period - 2 * kPi) <= 1e-12);
  CHECK(std::abs(2 * std::numbers::sqrt2 * elliptic_K(p.kappa) / p.eta1 - 2 * kPi) < 1e-11);
  // eta1^2 (2 - kappa^2) = 2 omega, i.e. eta1^2 + eta2^2 = 2 omega
  CHECK(std::abs(p.eta1 * p.eta1 + p.eta2 * p.eta2 - 2.0) < 1e-12);
  CHECK(std::abs(p.kappa * p.kappa - (p.eta1 * p.eta1 - p.eta2 * p.eta2) / (p.eta1 * p.eta1)) < 1e-12);
  CHECK(p.eta2 > 0.0);
  CHECK(p.eta2 < p.eta1);
  // frozen from an independent scipy ellipk + brentq run
  CHECK(p.eta1 == doctest::Approx(1.3904796381003441).epsilon(1e-12));
}

TEST_CASE("dn_solution_params across the branch") {
  for (double omega : {0.5001, 0.51, 0.75, 2.0, 10.0, 50.0}) {
    const DnParams p = dn_solution_params(omega);
    CHECK(std::abs(p.period - 2 * kPi) <= 1e-12);
    CHECK(std::abs(p.eta1 * p.eta1 + p.eta2 * p.eta2 - 2 * omega) < 1e-12 * omega);
    CHECK(p.eta2 > 0.0);
  }
}

TEST_CASE("dnoidal branch degenerates to the constant sqrt(1/2) as omega -> 1/2") {
  double prev_kappa = 1.0;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const DnParams p = dn_solution_params(0.5 + eps);
    CHECK(p.kappa < prev_kappa);
    CHECK(p.eta1 > 1.0 / std::numbers::sqrt2);
    prev_kappa = p.kappa;
  }
  // small-kappa expansion of the period constraint: omega - 1/2 = 3 kappa^4 / 64 + O(kappa^6)
  const double eps = 1e-8;
  const DnParams near = dn_solution_params(0.5 + eps);
  CHECK(std::pow(near.kappa, 4) == doctest::Approx(64 * eps / 3).epsilon(1e-2));
  CHECK(near.eta1 == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-3));
  CHECK_THROWS_AS(dn_solution_params(0.5), std::domain_error);
  CHECK_THROWS_AS(dn_solution_params(0.3), std::domain_error);
}

TEST_CASE("dn_solution is even, single-lobe and solves the s = 1 equation") {
  for (std::size_t n : {64u, 256u, 1024u}) {
    const GridPtr g = make_grid(n);
    const DnParams p = dn_solution_params(1.0);
    const auto f = dn_solution(g, p);
    const std::size_t mid = n / 2;
    CHECK(f[mid] == doctest::Approx(p.eta1).epsilon(1e-14));
    CHECK(f[0] == doctest::Approx(p.eta2).epsilon(1e-12));
    for (std::size_t j = 1; j < mid; ++j) {
      CHECK(std::abs(f[mid + j] - f[mid - j]) < 1e-14);
      CHECK(f[mid + j] < f[mid + j - 1]);
    }
  }
  const GridPtr g = make_grid(1024);
  CHECK(residual(dn_solution(g, 1.0), FractionalParams(1.0, 1.0)).res_norm <= 1e-8);
}

TEST_CASE("Stokes coefficients") {
  CHECK(stokes_gamma(1.0) == 6.0);
  // at s = 1/2 the denominators are 2^1 - 1 = 1 and 3^1 - 1 = 2
  CHECK(stokes_gamma(0.5) == doctest::Approx(3.0).epsilon(1e-15));
  const StokesParams sp = stokes_params(0.1, 1.0);
  CHECK(sp.gamma == 6.0);
  CHECK(sp.omega == doctest::Approx(0.5 + 0.01 * 3.0).epsilon(1e-15));
  CHECK(*stokes_amplitude(stokes_frequency(0.1, 1.0), 1.0) == doctest::Approx(0.1).epsilon(1e-14));
  // the frequency coefficient gamma/2 changes sign near s = 0.339
  CHECK_FALSE(stokes_amplitude(1.0, 0.3).has_value());
}

TEST_CASE("stokes_wave at zero amplitude is the constant sqrt(1/2)") {
  const GridPtr g = make_grid(32);
  const StokesWave w = stokes_wave(g, 0.0, 0.7);
  CHECK(w.omega == 0.5);
  for (double v : w.field.values()) CHECK(v == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("stokes_wave Fourier support by order") {
  const GridPtr g = make_grid(32);
  const double s = 0.8;
  const double a = 0.07;
  const StokesWave w = stokes_wave(g, a, s);
  const SpectralCoeffs c = forward(w.field);
  const double p2 = std::pow(4.0, s) - 1;
  const double p3 = std::pow(9.0, s) - 1;
  const double r2 = std::numbers::sqrt2;
  CHECK(std::abs(c.at(0).real() - (std::sqrt(w.omega) - r2 * 1.5 * a * a)) < 1e-15);
  CHECK(std::abs(c.at(1).real() - r2 * a / 2) < 1e-15);
  CHECK(std::abs(c.at(2).real() - r2 * a * a * 3 / (2 * p2) / 2) < 1e-15);
  CHECK(std::abs(c.at(3).real() - r2 * a * a * a * (1 + 9 / p2) / (2 * p3) / 2) < 1e-15);
  for (int k = 4; k <= 16; ++k) CHECK(std::abs(c.at(k)) < 1e-15);
  for (int k = 1; k <= 3; ++k) CHECK(std::abs(c.at(k).imag()) < 1e-15);
}

TEST_CASE("stokes_wave residual decays as a^4") {
  const GridPtr g = make_grid(256);
  for (double s : {0.6, 0.8, 1.0}) {
    const auto res = [&](double a) {
      const StokesWave w = stokes_wave(g, a, s);
      return residual(w.field, FractionalParams(s, w.omega)).res_norm;
    };
    const double ratio = res(0.05) / res(0.025);
    CHECK(ratio == doctest::Approx(16.0).epsilon(0.25));
  }
}

TEST_CASE("pairing the expansion with omega = 1/2 + a^2 gamma leaves an O(a^3) residual") {
  const GridPtr g = make_grid(256);
  const double s = 1.0;
  const auto res = [&](double a) {
    const StokesWave w = stokes_wave(g, a, s);
    const double omega = 0.5 + a * a * stokes_gamma(s);
    // same shape, but with sqrt(omega) and the frequency taken from the full gamma
    std::vector<double> v(w.field.values().begin(), w.field.values().end());
    for (double& x : v) x += std::sqrt(omega) - std::sqrt(w.omega);
    return residual(RealPeriodicField(g, v), FractionalParams(s, omega)).res_norm;
  };
  const double ratio = res(0.04) / res(0.02);
  CHECK(ratio > 7.0);
  CHECK(ratio < 9.5);
}
