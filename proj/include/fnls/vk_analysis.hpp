// Mass curves omega -> int phi^2 along the single-lobe branch and the
// forward-difference Vakhitov-Kolokolov index q = d/domega int phi^2.
// The sign of q decides orbital stability (q > 0) or instability (q < 0).
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fnls/petviashvili.hpp"

namespace fnls {

struct VKSweep {
  double s = 0.0;
  std::vector<double> omegas;
  std::vector<double> masses;
  std::vector<bool> converged;
  /// q_values[i] = (masses[i+1] - masses[i]) / delta_omega, absent when either
  /// endpoint failed to converge.  Empty until vk_index runs.
  std::vector<std::optional<double>> q_values;
  std::optional<double> omega_c;
  /// Width of the cell bracketing omega_c.
  std::optional<double> omega_c_width;

  double delta_omega() const;
  std::size_t converged_count() const;
};

enum class SweepMode {
  /// Each solve starts from the previous converged profile.
  warm_start,
  /// Every omega starts from default_initial_guess; points are distributed
  /// over worker threads.
  parallel_cold,
};

struct SweepOptions {
  int grid_n = 4096;
  PetviashviliConfig solver{};
  SweepMode mode = SweepMode::warm_start;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Sweep failure: bad range or no converged point.
class SweepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solves at omega_i = omega_min + i (omega_max - omega_min) / steps,
/// i = 1..steps, i.e. on the half-open interval (omega_min, omega_max].
/// Requires omega_min >= 1/2 and steps >= 2.  Throws SweepError if no point
/// converges.
VKSweep mass_curve(double s, double omega_min, double omega_max, int steps,
                   const SweepOptions& opts = {});

/// Fills q_values and omega_c.  Throws SweepError with fewer than two
/// consecutive converged points.
VKSweep vk_index(VKSweep sweep);

enum class Stability { stable, unstable, critical, indeterminate };

std::string_view to_string(Stability s);

struct Classification {
  Stability kind = Stability::indeterminate;
  std::optional<double> omega_c;
  std::optional<double> omega_c_width;
  /// Midpoints of every cell where the sign of q flips.
  std::vector<double> sign_changes;
};

/// All q > 0: stable.  All q < 0: unstable.  One - to + flip: critical with
/// omega_c at the midpoint of the bracketing pair.  Anything else:
/// indeterminate.  Missing q values are skipped.
Classification classify(const VKSweep& sweep);

}  // namespace fnls
