#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fnls/closed_form.hpp"
#include "fnls/linearized.hpp"
#include "fnls/petviashvili.hpp"

using namespace fnls;

namespace {

SolveResult solved(const GridPtr& g, double s, double omega) {
  const FractionalParams p(s, omega);
  return solve(default_initial_guess(g, p), p);
}

// Eigenvalues |k|^{2s} - 2 omega (L1) or |k|^{2s} (L2) of the constant branch.
std::vector<double> constant_branch(int modes, double s, double shift) {
  std::vector<double> v{shift};
  for (int k = 1; k <= modes; ++k) {
    v.push_back(std::pow(k, 2 * s) + shift);
    v.push_back(std::pow(k, 2 * s) + shift);
  }
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("constant profile gives diagonal operators") {
  const GridPtr g = make_grid(64);
  const double s = 0.7;
  const double omega = 0.9;
  const FractionalParams p(s, omega);
  const auto f = RealPeriodicField::constant(g, std::sqrt(omega));
  const int m = 16;
  const OperatorMatrix l1 = build_operator(f, p, OperatorKind::L1, m);
  const OperatorMatrix l2 = build_operator(f, p, OperatorKind::L2, m);
  REQUIRE(l1.dimension() == 2 * m + 1);
  for (int i = 0; i < l1.dimension(); ++i) {
    const int k = i == 0 ? 0 : (i <= m ? i : i - m);
    CHECK(l1.entries(i, i) == doctest::Approx(std::pow(k, 2 * s) - 2 * omega).epsilon(1e-13).scale(1));
    CHECK(l2.entries(i, i) == doctest::Approx(std::pow(k, 2 * s)).epsilon(1e-13).scale(1));
    for (int j = 0; j < l1.dimension(); ++j) {
      if (i != j) CHECK(std::abs(l1.entries(i, j)) < 1e-13);
    }
  }
  const auto eig2 = spectrum(l2);
  const double eps = kernel_threshold(omega);
  CHECK(count_zero(eig2, eps) == 1);
  CHECK(count_negative(eig2, eps) == 0);
}

TEST_CASE("spectrum sorts a diagonal matrix") {
  OperatorMatrix m{Eigen::MatrixXd::Zero(3, 3), 1, OperatorKind::L1};
  m.entries.diagonal() << 3.0, -1.0, 2.0;
  const auto eig = spectrum(m);
  CHECK(eig[0] == doctest::Approx(-1.0));
  CHECK(eig[1] == doctest::Approx(2.0));
  CHECK(eig[2] == doctest::Approx(3.0));

  m.entries(0, 1) = 1e-3;
  CHECK_THROWS_AS(spectrum(m), std::invalid_argument);
}

TEST_CASE("constant-branch L1 spectrum matches |k|^{2s} - 2 omega") {
  const GridPtr g = make_grid(256);
  for (double s : {0.5, 1.0}) {
    for (double omega : {0.4, 0.49, 0.51, 0.6}) {
      const FractionalParams p(s, omega);
      const auto f = RealPeriodicField::constant(g, std::sqrt(omega));
      const auto eig = spectrum(build_operator(f, p, OperatorKind::L1, 64));
      const auto expected = constant_branch(64, s, -2 * omega);
      REQUIRE(eig.size() == expected.size());
      double worst = 0.0;
      for (std::size_t i = 0; i < eig.size(); ++i) worst = std::max(worst, std::abs(eig[i] - expected[i]));
      CHECK(worst <= 1e-12);
      CHECK((count_negative(eig, kernel_threshold(omega)) == 1) == (omega <= 0.5));
    }
  }
  const GridPtr g2 = make_grid(64);
  const auto eig = spectrum(build_operator(RealPeriodicField::constant(g2, std::sqrt(0.4)),
                                           FractionalParams(1.0, 0.4), OperatorKind::L1, 8));
  CHECK(eig[0] == doctest::Approx(-0.8).epsilon(1e-13));
  CHECK(eig[1] == doctest::Approx(0.2).epsilon(1e-13));
  CHECK(eig[2] == doctest::Approx(0.2).epsilon(1e-13));
}

TEST_CASE("constant branch crossover at omega = 1/2") {
  const GridPtr g = make_grid(64);
  const auto count_at = [&](double omega) {
    const auto f = RealPeriodicField::constant(g, std::sqrt(omega));
    const auto eig = spectrum(build_operator(f, FractionalParams(1.0, omega), OperatorKind::L1, 16));
    return count_negative(eig, kernel_threshold(omega));
  };
  CHECK(count_at(0.49) == 1);
  CHECK(count_at(0.51) == 3);
  CHECK(count_at(0.6) == 3);
}

TEST_CASE("build_operator rejects truncations beyond the grid") {
  const GridPtr g = make_grid(32);
  const auto f = RealPeriodicField::constant(g, 1.0);
  CHECK_NOTHROW(build_operator(f, FractionalParams(1.0, 1.0), OperatorKind::L1, 16));
  CHECK_THROWS_AS(build_operator(f, FractionalParams(1.0, 1.0), OperatorKind::L1, 17), std::invalid_argument);
  CHECK_THROWS_AS(build_operator(f, FractionalParams(1.0, 1.0), OperatorKind::L1, 0), std::invalid_argument);
}

TEST_CASE("basis round trip") {
  const GridPtr g = make_grid(64);
  const auto f = RealPeriodicField::sample(g, [](double x) { return 0.3 + std::cos(2 * x) - 0.5 * std::sin(5 * x); });
  const Eigen::VectorXd c = to_basis(f, 20);
  const auto back = from_basis(c, g);
  for (std::size_t j = 0; j < g->size(); ++j) CHECK(back[j] == doctest::Approx(f[j]).epsilon(1e-13).scale(1));
  // orthonormal basis: coordinate norm equals the L2 norm
  CHECK(c.squaredNorm() == doctest::Approx(mass(f)).epsilon(1e-13));
}

TEST_CASE("matrix action on phi' reproduces pointwise L1 phi'") {
  const GridPtr g = make_grid(1024);
  const FractionalParams p(1.0, 1.0);
  const auto phi = dn_solution(g, 1.0);
  const auto dphi = derivative(phi);
  const int m = 256;
  const OperatorMatrix l1 = build_operator(phi, p, OperatorKind::L1, m);
  const Eigen::VectorXd mv = l1.entries * to_basis(dphi, m);
  const Eigen::VectorXd direct = to_basis(apply_operator(phi, p, OperatorKind::L1, dphi), m);
  CHECK((mv - direct).cwiseAbs().maxCoeff() <= 1e-8);

  // general even potential, odd and even test vectors
  const FractionalParams q(0.6, 1.7);
  const auto w = RealPeriodicField::sample(g, [](double x) { return 1.0 + 0.3 * std::cos(x) + 0.1 * std::cos(2 * x); });
  const auto v = RealPeriodicField::sample(g, [](double x) { return std::sin(3 * x) + 0.2 * std::cos(x); });
  for (OperatorKind k : {OperatorKind::L1, OperatorKind::L2}) {
    const OperatorMatrix a = build_operator(w, q, k, 32);
    const Eigen::VectorXd lhs = a.entries * to_basis(v, 32);
    const Eigen::VectorXd rhs = to_basis(apply_operator(w, q, k, v), 32);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("matrices of even and non-even potentials are symmetric") {
  const GridPtr g = make_grid(128);
  const auto w = RealPeriodicField::sample(g, [](double x) { return 1.0 + 0.3 * std::sin(x) + 0.2 * std::cos(3 * x); });
  const OperatorMatrix a = build_operator(w, FractionalParams(0.5, 1.0), OperatorKind::L1, 40);
  CHECK((a.entries - a.entries.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_NOTHROW(spectrum(a));
}

TEST_CASE("dnoidal spectral report") {
  const GridPtr g = make_grid(1024);
  const FractionalParams p(1.0, 1.0);
  const SolveResult r = solve(default_initial_guess(g, p), p);
  REQUIRE(r.converged);
  const SpectralReport rep = spectral_report(r.profile, p);
  CHECK(rep.n_l1 == 1);
  CHECK(rep.z_l1 == 1);
  CHECK(rep.n_l2 == 0);
  CHECK(rep.z_l2 == 1);
  CHECK(rep.kernel.l2_phi <= 1e-8);
  CHECK(rep.kernel.l1_dphi <= 1e-6);
  CHECK(rep.kernel.l1_phi_plus <= 1e-8);
  CHECK(rep.kernel.rel_l2_phi() <= 1e-8);
  CHECK(rep.kernel.rel_l1_phi_plus() <= 1e-8);
  CHECK(rep.kernel.rel_l1_dphi() <= 1e-6);
  CHECK(rep.l2_ground_state_positive);
  CHECK(rep.eps_neg == kernel_threshold(1.0));
  CHECK(rep.eig_l1.size() == 2 * 256 + 1);
  CHECK(std::is_sorted(rep.eig_l1.begin(), rep.eig_l1.end()));
  // lowest L2 eigenvalue is the kernel
  CHECK(std::abs(rep.eig_l2.front()) <= rep.eps_ker);
}

TEST_CASE("counts (1, 1, 0, 1) and kernel identities for s = 0.6, omega = 2") {
  const GridPtr g = make_grid(1024);
  const SolveResult r = solved(g, 0.6, 2.0);
  REQUIRE(r.converged);
  const SpectralReport rep = spectral_report(r.profile, r.params);
  CHECK(rep.n_l1 == 1);
  CHECK(rep.z_l1 == 1);
  CHECK(rep.n_l2 == 0);
  CHECK(rep.z_l2 == 1);
  CHECK(rep.kernel.rel_l2_phi() <= 1e-8);
  CHECK(rep.kernel.rel_l1_phi_plus() <= 1e-8);
  CHECK(rep.kernel.rel_l1_dphi() <= 1e-6);
}

TEST_CASE("spectra are stable under truncation") {
  const GridPtr g = make_grid(1024);
  const SolveResult r = solved(g, 0.8, 2.0);
  REQUIRE(r.converged);
  const SpectralReport a = spectral_report(r.profile, r.params, 128);
  const SpectralReport b = spectral_report(r.profile, r.params, 256);
  CHECK(a.n_l1 == b.n_l1);
  CHECK(a.z_l1 == b.z_l1);
  CHECK(a.n_l2 == b.n_l2);
  CHECK(a.z_l2 == b.z_l2);
  // near-zero and negative eigenvalues sit at the bottom of both spectra
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(a.eig_l1[i] - b.eig_l1[i]) <= 1e-8);
    CHECK(std::abs(a.eig_l2[i] - b.eig_l2[i]) <= 1e-8);
  }
}
