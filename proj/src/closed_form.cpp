#include "fnls/closed_form.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fnls {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxAgmSteps = 40;

void check_modulus(double kappa) {
  if (!(kappa >= 0.0 && kappa < 1.0)) {
    std::ostringstream msg;
    msg << "elliptic modulus must lie in [0, 1), got " << kappa;
    throw std::domain_error(msg.str());
  }
}

void check_complement(double kappa_prime) {
  if (!(kappa_prime > 0.0 && kappa_prime <= 1.0)) {
    std::ostringstream msg;
    msg << "complementary modulus must lie in (0, 1], got " << kappa_prime;
    throw std::domain_error(msg.str());
  }
}

double agm(double a, double b) {
  for (int i = 0; i < kMaxAgmSteps && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return 0.5 * (a + b);
}

}  // namespace

double elliptic_K_c(double kappa_prime) {
  check_complement(kappa_prime);
  return kPi / (2.0 * agm(1.0, kappa_prime));
}

double elliptic_K(double kappa) {
  check_modulus(kappa);
  return elliptic_K_c(std::sqrt((1.0 - kappa) * (1.0 + kappa)));
}

JacobiValues jacobi_elliptic_c(double u, double kappa_prime) {
  check_complement(kappa_prime);
  if (kappa_prime == 1.0) return {std::sin(u), std::cos(u), 1.0};

  // Descending Landen sequence: a_{n+1} = (a_n + b_n)/2, b_{n+1} = sqrt(a_n b_n),
  // c_{n+1} = (a_n - b_n)/2, started from a_0 = 1, b_0 = kappa'.
  std::array<double, kMaxAgmSteps + 1> a{};
  std::array<double, kMaxAgmSteps + 1> c{};
  a[0] = 1.0;
  double b = kappa_prime;
  c[0] = std::sqrt((1.0 - kappa_prime) * (1.0 + kappa_prime));
  int n = 0;
  while (n < kMaxAgmSteps && std::abs(c[n]) > 1e-17 * a[n]) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }

  // phi_n = 2^n a_n u, then sin(2 phi_{m-1} - phi_m) = (c_m / a_m) sin(phi_m).
  double phi = std::ldexp(a[n] * u, n);
  for (int m = n; m > 0; --m) phi = 0.5 * (phi + std::asin(c[m] / a[m] * std::sin(phi)));
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  // dn^2 = kappa'^2 + kappa^2 cn^2: a sum of non-negative terms, accurate where
  // the quotient cos(phi_0) / cos(phi_1 - phi_0) degenerates to 0/0 (u = K).
  const double kappa_sq = (1.0 - kappa_prime) * (1.0 + kappa_prime);
  const double dn = std::sqrt(kappa_prime * kappa_prime + kappa_sq * cn * cn);
  return {sn, cn, dn};
}

JacobiValues jacobi_elliptic(double u, double kappa) {
  check_modulus(kappa);
  return jacobi_elliptic_c(u, std::sqrt((1.0 - kappa) * (1.0 + kappa)));
}

double jacobi_dn(double u, double kappa) { return jacobi_elliptic(u, kappa).dn; }

namespace {

struct PeriodEval {
  double eta1;
  double period;
};

// The unknown is kappa'^2 = 1 - kappa^2.  From eta1^2 (2 - kappa^2) = 2 omega,
// eta1 = sqrt(2 omega / (1 + kappa'^2)).
PeriodEval period_at(double omega, double kappa_prime_sq) {
  const double eta1 = std::sqrt(2.0 * omega / (1.0 + kappa_prime_sq));
  const double k = elliptic_K_c(std::sqrt(kappa_prime_sq));
  return {eta1, 2.0 * std::numbers::sqrt2 * k / eta1};
}

}  // namespace

DnParams dn_solution_params(double omega) {
  if (!(omega > 0.5) || !std::isfinite(omega)) {
    std::ostringstream msg;
    msg << "the 2pi-periodic dnoidal branch requires omega > 1/2, got " << omega;
    throw std::domain_error(msg.str());
  }
  const double target = 2.0 * kPi;

  // Scan log10(kappa'^2) from 0 (kappa = 0) downwards; the period grows
  // without bound as kappa' -> 0.
  double hi_log = 0.0;  // period(hi) < 2 pi
  double lo_log = 0.0;
  bool found = false;
  if (period_at(omega, 1.0).period >= target) {
    throw std::runtime_error("dn period equation: no root, period already exceeds 2pi at kappa = 0");
  }
  for (double e = -0.25; e >= -300.0; e -= 0.25) {
    if (period_at(omega, std::pow(10.0, e)).period > target) {
      lo_log = e;
      found = true;
      break;
    }
    hi_log = e;
  }
  if (!found) {
    std::ostringstream msg;
    msg << "dn period equation: no sign change for log10(kappa'^2) in [-300, 0] at omega = "
        << omega;
    throw std::runtime_error(msg.str());
  }

  double mid = 0.5 * (lo_log + hi_log);
  PeriodEval ev = period_at(omega, std::pow(10.0, mid));
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo_log + hi_log);
    ev = period_at(omega, std::pow(10.0, mid));
    if (ev.period > target) {
      lo_log = mid;
    } else {
      hi_log = mid;
    }
    if (hi_log - lo_log <= 1e-16 * std::max(1.0, std::abs(mid))) break;
  }
  if (std::abs(ev.period - target) > 1e-12) {
    std::ostringstream msg;
    msg << "dn period equation: bisection stalled with |T - 2pi| = " << std::abs(ev.period - target);
    throw std::runtime_error(msg.str());
  }

  const double kp_sq = std::pow(10.0, mid);
  DnParams p{};
  p.omega = omega;
  p.eta1 = ev.eta1;
  p.kappa_prime = std::sqrt(kp_sq);
  p.kappa = std::sqrt(1.0 - kp_sq);
  p.eta2 = p.eta1 * p.kappa_prime;
  p.period = ev.period;
  return p;
}

RealPeriodicField dn_solution(const GridPtr& grid, const DnParams& params) {
  const double scale = params.eta1 / std::numbers::sqrt2;
  return RealPeriodicField::sample(grid, [&](double x) {
    return params.eta1 * jacobi_elliptic_c(scale * x, params.kappa_prime).dn;
  });
}

RealPeriodicField dn_solution(const GridPtr& grid, double omega) {
  return dn_solution(grid, dn_solution_params(omega));
}

double stokes_gamma(double s) {
  return 7.5 - 9.0 / (2.0 * (std::pow(2.0, 2.0 * s) - 1.0));
}

double stokes_frequency(double a, double s) { return 0.5 + 0.5 * a * a * stokes_gamma(s); }

StokesParams stokes_params(double a, double s) {
  return {a, s, stokes_gamma(s), stokes_frequency(a, s)};
}

std::optional<double> stokes_amplitude(double omega, double s) {
  const double g = stokes_gamma(s);
  if (!(g > 0.0) || omega < 0.5) return std::nullopt;
  return std::sqrt(2.0 * (omega - 0.5) / g);
}

StokesWave stokes_wave(const GridPtr& grid, double a, double s) {
  if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("stokes_wave: s must lie in (0, 1]");
  const double p2 = std::pow(2.0, 2.0 * s) - 1.0;
  const double p3 = std::pow(3.0, 2.0 * s) - 1.0;
  const double c2 = 3.0 / (2.0 * p2);
  const double c3 = (1.0 + 9.0 / p2) / (2.0 * p3);
  const double omega = stokes_frequency(a, s);
  if (!(omega > 0.0)) throw std::domain_error("stokes_wave: amplitude gives non-positive omega");
  const double base = std::sqrt(omega);
  auto field = RealPeriodicField::sample(grid, [&](double x) {
    const double corr = a * std::cos(x) + a * a * (-1.5 + c2 * std::cos(2.0 * x)) +
                        a * a * a * c3 * std::cos(3.0 * x);
    return base + std::numbers::sqrt2 * corr;
  });
  return {std::move(field), omega};
}

}  // namespace fnls
