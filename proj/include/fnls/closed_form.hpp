// Exact and asymptotic solution families of
//
//     (-Delta)^s phi + omega phi - phi^3 = 0   on [-pi, pi].
//
// At s = 1 the single-lobe branch is the dnoidal wave
//     phi(x) = eta1 dn(eta1 x / sqrt(2); kappa),
// and for every s the branch leaves the constant sqrt(1/2) at omega = 1/2
// along a Stokes expansion in the amplitude a.
#pragma once

#include <optional>

#include "fnls/spectral_core.hpp"

namespace fnls {

// ---------------------------------------------------------------------------
// Elliptic functions (arithmetic-geometric mean / descending Landen).
// Moduli are passed as kappa (not the parameter m = kappa^2).  The *_c
// variants take the complementary modulus kappa' = sqrt(1 - kappa^2), which
// keeps full relative precision as kappa -> 1.

/// Complete elliptic integral of the first kind.  Throws for kappa outside [0, 1).
double elliptic_K(double kappa);
double elliptic_K_c(double kappa_prime);

struct JacobiValues {
  double sn;
  double cn;
  double dn;
};

JacobiValues jacobi_elliptic(double u, double kappa);
JacobiValues jacobi_elliptic_c(double u, double kappa_prime);

double jacobi_dn(double u, double kappa);

// ---------------------------------------------------------------------------
// Dnoidal wave at s = 1.

struct DnParams {
  double omega;
  double eta1;
  double eta2;
  double kappa;
  double kappa_prime;
  /// 2 sqrt(2) K(kappa) / eta1; equals 2 pi for a returned solution.
  double period;
};

/// Parameters of the 2 pi-periodic dnoidal wave with frequency omega.  The
/// amplitudes satisfy eta1^2 + eta2^2 = 2 omega (the relation the profile
/// equation imposes) and kappa^2 = (eta1^2 - eta2^2) / eta1^2.
/// Throws std::domain_error for omega <= 1/2 and std::runtime_error if the
/// period equation has no bracketed root.
DnParams dn_solution_params(double omega);

RealPeriodicField dn_solution(const GridPtr& grid, double omega);
RealPeriodicField dn_solution(const GridPtr& grid, const DnParams& params);

// ---------------------------------------------------------------------------
// Stokes expansion
//     phi = sqrt(omega) + sqrt(2) (a phi1 + a^2 phi2 + a^3 phi3),
//     phi1 = cos x,
//     phi2 = -3/2 + 3 / (2 (2^{2s} - 1)) cos 2x,
//     phi3 = [1 + 9 / (2^{2s} - 1)] / (2 (3^{2s} - 1)) cos 3x.

struct StokesParams {
  double a;
  double s;
  /// 15/2 - 9 / (2 (2^{2s} - 1)).
  double gamma;
  /// 1/2 + a^2 gamma / 2.
  double omega;
};

double stokes_gamma(double s);

/// Frequency of the truncated expansion.  The cos x balance at order a^3
/// gives omega - 1/2 = a^2 gamma / 2; this pairing makes the residual O(a^4).
double stokes_frequency(double a, double s);

StokesParams stokes_params(double a, double s);

/// Amplitude whose truncated frequency equals omega, if gamma(s) > 0.
std::optional<double> stokes_amplitude(double omega, double s);

struct StokesWave {
  RealPeriodicField field;
  double omega;
};

/// Samples the third-order expansion; sqrt(omega) uses the returned omega.
/// Amplitudes above 0.2 are outside the range where the expansion is useful
/// but are not rejected.
StokesWave stokes_wave(const GridPtr& grid, double a, double s);

}  // namespace fnls
