#include "fnls/petviashvili.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "fnls/closed_form.hpp"

namespace fnls {

namespace {

constexpr double kMaxStokesAmplitude = 0.2;

SpectralCoeffs petviashvili_update(const SpectralCoeffs& c_cubed, const FractionalParams& p,
                                   double factor) {
  SpectralCoeffs next = c_cubed;
  auto d = next.data();
  for (std::size_t j = 0; j < d.size(); ++j) {
    d[j] *= factor / (fractional_symbol(next.wavenumber(j), p.s) + p.omega);
  }
  return next;
}

bool all_finite(const SpectralCoeffs& c) {
  for (const auto& z : c.data()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

}  // namespace

void PetviashviliConfig::validate() const {
  if (!(nu > 1.0 && nu < 2.0)) throw std::invalid_argument("nu must lie in (1, 2)");
  if (!(tol_error > 0.0 && tol_res > 0.0 && tol_m > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
  if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
}

double stabilizing_factor(const SpectralCoeffs& c, const SpectralCoeffs& c_cubed,
                          const FractionalParams& p) {
  double norm_sq = 0.0;
  double numerator = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double w = std::norm(c.data()[j]);
    norm_sq += w;
    numerator += (fractional_symbol(c.wavenumber(j), p.s) + p.omega) * w;
  }
  // (f^3, f) >= ||f||^4 / (2 pi) for real f, so only a vanishing field trips this.
  const double two_pi = 2.0 * std::numbers::pi;
  const double l2_sq = two_pi * norm_sq;
  const double denominator = inner_product(c_cubed, c);
  if (!(std::abs(denominator) > 1e-14 * l2_sq * l2_sq)) {
    std::ostringstream msg;
    msg << "stabilizing factor: (f^3, f) = " << denominator
        << " is degenerate; the iterate has collapsed to zero";
    throw IterationFailure(msg.str());
  }
  return two_pi * numerator / denominator;
}

double stabilizing_factor(const RealPeriodicField& f, const FractionalParams& p) {
  const SpectralCoeffs c = forward(f);
  return stabilizing_factor(c, cube(c), p);
}

RealPeriodicField iterate_once(const RealPeriodicField& f, const FractionalParams& p, double nu) {
  const SpectralCoeffs c = forward(f);
  const SpectralCoeffs c3 = cube(c);
  const double m = stabilizing_factor(c, c3, p);
  return inverse(petviashvili_update(c3, p, std::pow(m, nu)), f.grid_ptr());
}

SolveResult solve(const RealPeriodicField& initial, const FractionalParams& p,
                  const PetviashviliConfig& cfg) {
  cfg.validate();
  const GridPtr& grid = initial.grid_ptr();

  if (p.omega <= 0.5) {
    auto constant = RealPeriodicField::constant(grid, std::sqrt(p.omega));
    const double res = residual(constant, p).res_norm;
    return {std::move(constant), {}, true, p, res};
  }

  SpectralCoeffs current = forward(initial);
  if (cfg.enforce_even) current = even_part(current);
  SpectralCoeffs current_cubed = cube(current);

  ConvergenceTrace trace;
  bool converged = false;
  for (int it = 0; it < cfg.max_iter; ++it) {
    const double m = stabilizing_factor(current, current_cubed, p);
    SpectralCoeffs next = petviashvili_update(current_cubed, p, std::pow(m, cfg.nu));
    if (cfg.enforce_even) next = even_part(next);
    if (!all_finite(next)) {
      throw IterationFailure("non-finite iterate at update " + std::to_string(it + 1));
    }
    SpectralCoeffs next_cubed = cube(next);

    SpectralCoeffs diff = next;
    for (std::size_t j = 0; j < diff.size(); ++j) diff.data()[j] -= current.data()[j];

    const double err = sup_norm(diff);
    const double gap = std::abs(1.0 - m);
    const double res = residual_norm(next, next_cubed, p);
    if (!std::isfinite(err) || !std::isfinite(gap) || !std::isfinite(res)) {
      throw IterationFailure("non-finite convergence monitor at update " + std::to_string(it + 1));
    }
    trace.error.push_back(err);
    trace.m_gap.push_back(gap);
    trace.res.push_back(res);

    current = std::move(next);
    current_cubed = std::move(next_cubed);
    if (err <= cfg.tol_error && gap <= cfg.tol_m && res <= cfg.tol_res) {
      converged = true;
      break;
    }
  }

  const double final_res = trace.res.empty() ? 0.0 : trace.res.back();
  return {inverse(current, grid), std::move(trace), converged, p, final_res};
}

RealPeriodicField default_initial_guess(const GridPtr& grid, const FractionalParams& p) {
  if (p.omega <= 0.5) return RealPeriodicField::constant(grid, std::sqrt(p.omega));
  const auto a = stokes_amplitude(p.omega, p.s);
  if (a && *a <= kMaxStokesAmplitude) return stokes_wave(grid, *a, p.s).field;
  const double base = std::sqrt(2.0 * p.omega);
  return RealPeriodicField::sample(grid, [base](double x) { return base * (1.0 + 0.2 * std::cos(x)); });
}

}  // namespace fnls
