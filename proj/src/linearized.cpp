#include "fnls/linearized.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fnls {

namespace {

constexpr double kPi = std::numbers::pi;

// Fourier coefficients V_m, |m| <= N, of weight * phi^2.  The square is formed
// on a 2N grid so no product mode aliases; modes beyond N are zero.
class Potential {
 public:
  Potential(const RealPeriodicField& phi, double weight) : n_(static_cast<int>(phi.size())) {
    const SpectralCoeffs c = forward(phi);
    const int ny = c.nyquist();
    const int np = 2 * n_;
    std::vector<complex> padded(static_cast<std::size_t>(np), complex(0.0, 0.0));
    SpectralCoeffs pc(std::move(padded));
    for (int k = -ny + 1; k < ny; ++k) pc.at(k) = c.at(k);
    pc.at(ny) = 0.5 * c.at(ny).real();
    pc.at(-ny) = 0.5 * c.at(ny).real();

    const GridPtr fine = make_grid(static_cast<std::size_t>(np));
    const RealPeriodicField v = inverse(pc, fine);
    std::vector<double> sq(v.values().begin(), v.values().end());
    for (double& x : sq) x = weight * x * x;
    coeffs_ = forward(RealPeriodicField(fine, std::move(sq)));
  }

  complex at(int m) const {
    if (m > n_ || m < -n_) return {0.0, 0.0};
    if (m == n_ || m == -n_) return 0.5 * coeffs_.at(n_).real();
    return coeffs_.at(m);
  }

 private:
  int n_;
  SpectralCoeffs coeffs_;
};

void check_modes(int n_modes, std::size_t n_points) {
  if (n_modes < 1 || static_cast<std::size_t>(n_modes) > n_points / 2) {
    throw std::invalid_argument("n_modes must lie in [1, N/2] = [1, " +
                                std::to_string(n_points / 2) + "], got " +
                                std::to_string(n_modes));
  }
}

}  // namespace

std::string_view to_string(OperatorKind kind) { return kind == OperatorKind::L1 ? "L1" : "L2"; }

OperatorMatrix build_operator(const RealPeriodicField& f, const FractionalParams& p,
                              OperatorKind which, int n_modes) {
  check_modes(n_modes, f.size());
  const Potential v(f, which == OperatorKind::L1 ? 3.0 : 1.0);
  const int m = n_modes;
  const Eigen::Index dim = 2 * m + 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  const auto cos_idx = [](int k) { return static_cast<Eigen::Index>(k); };
  const auto sin_idx = [m](int k) { return static_cast<Eigen::Index>(m + k); };

  // Potential block: the Gram matrix of V in the trigonometric basis.
  a(0, 0) = v.at(0).real();
  for (int j = 1; j <= m; ++j) {
    const complex vj = v.at(j);
    a(0, cos_idx(j)) = a(cos_idx(j), 0) = std::numbers::sqrt2 * vj.real();
    a(0, sin_idx(j)) = a(sin_idx(j), 0) = -std::numbers::sqrt2 * vj.imag();
    for (int l = 1; l <= m; ++l) {
      const complex diff = v.at(j - l);
      const complex sum = v.at(j + l);
      a(cos_idx(j), cos_idx(l)) = diff.real() + sum.real();
      a(sin_idx(j), sin_idx(l)) = diff.real() - sum.real();
      a(cos_idx(j), sin_idx(l)) = -(v.at(l + j).imag() + v.at(l - j).imag());
      a(sin_idx(l), cos_idx(j)) = a(cos_idx(j), sin_idx(l));
    }
  }
  a = -a;

  a(0, 0) += p.omega;
  for (int k = 1; k <= m; ++k) {
    const double d = fractional_symbol(k, p.s) + p.omega;
    a(cos_idx(k), cos_idx(k)) += d;
    a(sin_idx(k), sin_idx(k)) += d;
  }
  return {std::move(a), n_modes, which};
}

std::vector<double> spectrum(const OperatorMatrix& m) {
  const double scale = m.entries.norm();
  if ((m.entries - m.entries.transpose()).norm() > 1e-12 * std::max(scale, 1.0)) {
    throw std::invalid_argument("spectrum: operator matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.entries, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("spectrum: eigensolver failed");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

Eigenpair lowest_eigenpair(const OperatorMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.entries);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  return {solver.eigenvalues()(0), solver.eigenvectors().col(0)};
}

Eigen::VectorXd to_basis(const RealPeriodicField& f, int n_modes) {
  check_modes(n_modes, f.size());
  const SpectralCoeffs c = forward(f);
  const int ny = c.nyquist();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * n_modes + 1);
  out(0) = std::sqrt(2.0 * kPi) * c.at(0).real();
  const double root_pi = std::sqrt(kPi);
  for (int k = 1; k <= n_modes; ++k) {
    if (k == ny) {
      out(k) = root_pi * c.at(k).real();
    } else {
      out(k) = 2.0 * root_pi * c.at(k).real();
      out(n_modes + k) = -2.0 * root_pi * c.at(k).imag();
    }
  }
  return out;
}

RealPeriodicField from_basis(const Eigen::VectorXd& coords, const GridPtr& grid) {
  const auto m = static_cast<int>((coords.size() - 1) / 2);
  const double c0 = coords(0) / std::sqrt(2.0 * kPi);
  const double inv_root_pi = 1.0 / std::sqrt(kPi);
  return RealPeriodicField::sample(grid, [&](double x) {
    double acc = c0;
    for (int k = 1; k <= m; ++k) {
      acc += inv_root_pi * (coords(k) * std::cos(k * x) + coords(m + k) * std::sin(k * x));
    }
    return acc;
  });
}

RealPeriodicField apply_operator(const RealPeriodicField& phi, const FractionalParams& p,
                                 OperatorKind which, const RealPeriodicField& v) {
  const double weight = which == OperatorKind::L1 ? 3.0 : 1.0;
  const RealPeriodicField lap = fractional_laplacian(v, p.s);
  std::vector<double> out(v.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = lap[j] + (p.omega - weight * phi[j] * phi[j]) * v[j];
  }
  return RealPeriodicField(v.grid_ptr(), std::move(out));
}

namespace {

double ratio(double num, double den) { return den > 0.0 ? num / den : num; }

}  // namespace

double KernelResiduals::rel_l1_dphi() const { return ratio(l1_dphi, norm_dphi); }
double KernelResiduals::rel_l2_phi() const { return ratio(l2_phi, norm_phi); }
double KernelResiduals::rel_l1_phi_plus() const { return ratio(l1_phi_plus, norm_phi_cubed); }

double kernel_threshold(double omega) { return 1e-6 * (1.0 + omega); }

int count_negative(const std::vector<double>& eig, double eps) {
  int n = 0;
  for (double x : eig) n += x < -eps ? 1 : 0;
  return n;
}

int count_zero(const std::vector<double>& eig, double eps) {
  int n = 0;
  for (double x : eig) n += std::abs(x) <= eps ? 1 : 0;
  return n;
}

SpectralReport spectral_report(const RealPeriodicField& f, const FractionalParams& p,
                               int n_modes) {
  SpectralReport r;
  r.n_modes = n_modes;
  r.eps_ker = kernel_threshold(p.omega);
  r.eps_neg = r.eps_ker;

  const OperatorMatrix l1 = build_operator(f, p, OperatorKind::L1, n_modes);
  const OperatorMatrix l2 = build_operator(f, p, OperatorKind::L2, n_modes);
  r.eig_l1 = spectrum(l1);
  r.eig_l2 = spectrum(l2);
  r.n_l1 = count_negative(r.eig_l1, r.eps_neg);
  r.z_l1 = count_zero(r.eig_l1, r.eps_ker);
  r.n_l2 = count_negative(r.eig_l2, r.eps_neg);
  r.z_l2 = count_zero(r.eig_l2, r.eps_ker);

  const RealPeriodicField dphi = derivative(f);
  std::vector<double> cubed(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) cubed[j] = f[j] * f[j] * f[j];
  const RealPeriodicField phi3(f.grid_ptr(), cubed);

  RealPeriodicField l1phi = apply_operator(f, p, OperatorKind::L1, f);
  std::vector<double> plus(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) plus[j] = l1phi[j] + 2.0 * cubed[j];

  r.kernel.l1_dphi = l2_norm(apply_operator(f, p, OperatorKind::L1, dphi));
  r.kernel.l2_phi = l2_norm(apply_operator(f, p, OperatorKind::L2, f));
  r.kernel.l1_phi_plus = l2_norm(RealPeriodicField(f.grid_ptr(), std::move(plus)));
  r.kernel.norm_phi = l2_norm(f);
  r.kernel.norm_dphi = l2_norm(dphi);
  r.kernel.norm_phi_cubed = l2_norm(phi3);

  const Eigenpair ground = lowest_eigenpair(l2);
  const RealPeriodicField g = from_basis(ground.vector, f.grid_ptr());
  double lo = g[0];
  double hi = g[0];
  for (double x : g.values()) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  r.l2_ground_state_positive = lo > 0.0 || hi < 0.0;
  return r;
}

}  // namespace fnls
