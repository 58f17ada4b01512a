// Petviashvili iteration for the periodic standing-wave profile
//
//     phi_{n+1}^(k) = M_n^nu / (|k|^{2s} + omega) * (phi_n^3)^(k),
//     M_n = (((-Delta)^s + omega) phi_n, phi_n) / (phi_n^3, phi_n).
//
// The stabilizing factor M_n restores the amplitude that the plain
// fixed-point map would lose or blow up; at a solution M = 1.
#pragma once

#include <stdexcept>
#include <vector>

#include "fnls/spectral_core.hpp"

namespace fnls {

struct PetviashviliConfig {
  double nu = 1.5;
  double tol_error = 1e-12;
  double tol_res = 1e-12;
  double tol_m = 1e-12;
  int max_iter = 500;
  bool enforce_even = true;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// Per-iteration monitors, one entry per update performed.
struct ConvergenceTrace {
  std::vector<double> error;  ///< sup |phi_{n+1} - phi_n|
  std::vector<double> m_gap;  ///< |1 - M_n|
  std::vector<double> res;    ///< sup |S phi_{n+1}|

  std::size_t size() const { return error.size(); }
};

struct SolveResult {
  RealPeriodicField profile;
  ConvergenceTrace trace;
  bool converged;
  FractionalParams params;
  double final_res;
};

/// Raised when the iteration cannot continue: the stabilizing factor's
/// denominator vanishes (collapse to zero) or a non-finite value appears.
class IterationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double stabilizing_factor(const RealPeriodicField& f, const FractionalParams& p);
double stabilizing_factor(const SpectralCoeffs& c, const SpectralCoeffs& c_cubed,
                          const FractionalParams& p);

RealPeriodicField iterate_once(const RealPeriodicField& f, const FractionalParams& p, double nu);

/// Runs the iteration until Error, |1 - M| and RES are all below their
/// tolerances, or max_iter updates.  For omega <= 1/2 the constant
/// sqrt(omega) is returned with an empty trace.  Non-convergence is reported
/// through SolveResult::converged; IterationFailure is thrown on collapse or
/// non-finite values.
SolveResult solve(const RealPeriodicField& initial, const FractionalParams& p,
                  const PetviashviliConfig& cfg = {});

/// Stokes field when the amplitude inverted from omega is at most 0.2, else
/// sqrt(2 omega) (1 + 0.2 cos x); the constant sqrt(omega) for omega <= 1/2.
RealPeriodicField default_initial_guess(const GridPtr& grid, const FractionalParams& p);

}  // namespace fnls
