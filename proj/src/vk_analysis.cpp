#include "fnls/vk_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "fnls/spectral_core.hpp"

namespace fnls {

namespace {

struct PointResult {
  double mass = 0.0;
  bool converged = false;
  std::optional<RealPeriodicField> profile;
};

PointResult solve_point(const RealPeriodicField& guess, double s, double omega,
                        const PetviashviliConfig& cfg) {
  try {
    SolveResult r = solve(guess, FractionalParams(s, omega), cfg);
    PointResult out;
    out.mass = mass(r.profile);
    out.converged = r.converged;
    out.profile = std::move(r.profile);
    return out;
  } catch (const IterationFailure&) {
    return {};
  }
}

}  // namespace

double VKSweep::delta_omega() const {
  if (omegas.size() < 2) return 0.0;
  return omegas[1] - omegas[0];
}

std::size_t VKSweep::converged_count() const {
  return static_cast<std::size_t>(std::count(converged.begin(), converged.end(), true));
}

VKSweep mass_curve(double s, double omega_min, double omega_max, int steps,
                   const SweepOptions& opts) {
  if (!(omega_min >= 0.5)) {
    std::ostringstream msg;
    msg << "sweep range must lie above omega = 1/2 (constant-solution regime), got omega_min = "
        << omega_min;
    throw SweepError(msg.str());
  }
  if (!(omega_max > omega_min)) throw SweepError("sweep requires omega_max > omega_min");
  if (steps < 2) throw SweepError("sweep requires at least 2 steps");
  FractionalParams(s, omega_max);  // validates s
  opts.solver.validate();

  const GridPtr grid = make_grid(static_cast<std::size_t>(opts.grid_n));
  const double h = (omega_max - omega_min) / steps;

  VKSweep sweep;
  sweep.s = s;
  sweep.omegas.resize(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) sweep.omegas[i] = omega_min + (i + 1) * h;
  sweep.masses.assign(sweep.omegas.size(), std::nan(""));
  sweep.converged.assign(sweep.omegas.size(), false);

  if (opts.mode == SweepMode::warm_start) {
    std::optional<RealPeriodicField> last;
    for (std::size_t i = 0; i < sweep.omegas.size(); ++i) {
      const double w = sweep.omegas[i];
      const RealPeriodicField guess =
          last ? *last : default_initial_guess(grid, FractionalParams(s, w));
      PointResult r = solve_point(guess, s, w, opts.solver);
      if (r.profile) sweep.masses[i] = r.mass;
      sweep.converged[i] = r.converged;
      if (r.converged) last = std::move(r.profile);
    }
  } else {
    unsigned threads = opts.threads != 0 ? opts.threads : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(steps)));
    std::vector<PointResult> results(sweep.omegas.size());
    {
      std::vector<std::jthread> workers;
      for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
          for (std::size_t i = t; i < results.size(); i += threads) {
            const double w = sweep.omegas[i];
            results[i] = solve_point(default_initial_guess(grid, FractionalParams(s, w)), s, w,
                                     opts.solver);
          }
        });
      }
    }
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (results[i].profile) sweep.masses[i] = results[i].mass;
      sweep.converged[i] = results[i].converged;
    }
  }

  if (sweep.converged_count() == 0) {
    std::ostringstream msg;
    msg << "sweep at s = " << s << ": no omega in (" << omega_min << ", " << omega_max
        << "] converged";
    throw SweepError(msg.str());
  }
  return sweep;
}

VKSweep vk_index(VKSweep sweep) {
  const std::size_t n = sweep.omegas.size();
  if (sweep.masses.size() != n || sweep.converged.size() != n) {
    throw SweepError("vk_index: sweep arrays differ in length");
  }
  const double h = sweep.delta_omega();
  sweep.q_values.assign(n > 0 ? n - 1 : 0, std::nullopt);
  std::size_t pairs = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (sweep.converged[i] && sweep.converged[i + 1]) {
      sweep.q_values[i] = (sweep.masses[i + 1] - sweep.masses[i]) / h;
      ++pairs;
    }
  }
  if (pairs == 0) throw SweepError("vk_index: fewer than two consecutive converged points");

  const Classification c = classify(sweep);
  sweep.omega_c = c.omega_c;
  sweep.omega_c_width = c.omega_c_width;
  return sweep;
}

std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::critical: return "critical";
    case Stability::indeterminate: break;
  }
  return "indeterminate";
}

Classification classify(const VKSweep& sweep) {
  Classification out;
  int prev_sign = 0;
  std::size_t prev_index = 0;
  int positives = 0;
  int negatives = 0;
  int zeros = 0;
  int up_flips = 0;
  std::optional<std::size_t> flip_from;
  std::optional<std::size_t> flip_to;
  for (std::size_t i = 0; i < sweep.q_values.size(); ++i) {
    if (!sweep.q_values[i]) continue;
    const double q = *sweep.q_values[i];
    const int sign = q > 0.0 ? 1 : (q < 0.0 ? -1 : 0);
    positives += sign > 0;
    negatives += sign < 0;
    zeros += sign == 0;
    if (prev_sign != 0 && sign != 0 && sign != prev_sign) {
      // q_i is attributed to omega_i; the flip sits between the two points.
      const double mid = 0.5 * (sweep.omegas[prev_index] + sweep.omegas[i]);
      out.sign_changes.push_back(mid);
      if (prev_sign < 0) {
        ++up_flips;
        flip_from = prev_index;
        flip_to = i;
      }
    }
    if (sign != 0) {
      prev_sign = sign;
      prev_index = i;
    }
  }

  if (zeros == 0 && positives > 0 && negatives == 0) {
    out.kind = Stability::stable;
  } else if (zeros == 0 && negatives > 0 && positives == 0) {
    out.kind = Stability::unstable;
  } else if (zeros == 0 && out.sign_changes.size() == 1 && up_flips == 1) {
    out.kind = Stability::critical;
    out.omega_c = 0.5 * (sweep.omegas[*flip_from] + sweep.omegas[*flip_to]);
    out.omega_c_width = sweep.omegas[*flip_to] - sweep.omegas[*flip_from];
  }
  return out;
}

}  // namespace fnls
