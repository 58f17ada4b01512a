// Linearization of the profile equation around a wave phi:
//
//     L1 = (-Delta)^s + omega - 3 phi^2,    L2 = (-Delta)^s + omega - phi^2,
//
// truncated to the orthonormal real trigonometric basis
//     { 1/sqrt(2 pi), cos(kx)/sqrt(pi), sin(kx)/sqrt(pi) : k = 1..M }.
// Basis order: index 0 is the constant, 1..M the cosines, M+1..2M the sines,
// so an even potential gives a block-diagonal matrix (even block first).
#pragma once

#include <Eigen/Dense>
#include <string_view>
#include <vector>

#include "fnls/spectral_core.hpp"

namespace fnls {

enum class OperatorKind { L1, L2 };

std::string_view to_string(OperatorKind kind);

struct OperatorMatrix {
  Eigen::MatrixXd entries;
  int n_modes;
  OperatorKind which;

  Eigen::Index dimension() const { return entries.rows(); }
};

/// Throws std::invalid_argument unless 1 <= n_modes <= N/2.
OperatorMatrix build_operator(const RealPeriodicField& f, const FractionalParams& p,
                              OperatorKind which, int n_modes);

/// Ascending eigenvalues.  Rejects matrices that are not symmetric to 1e-12 relative.
std::vector<double> spectrum(const OperatorMatrix& m);

struct Eigenpair {
  double value;
  Eigen::VectorXd vector;
};

/// Smallest eigenvalue with its unit eigenvector (basis coordinates).
Eigenpair lowest_eigenpair(const OperatorMatrix& m);

/// Basis coordinates of f for modes up to n_modes.
Eigen::VectorXd to_basis(const RealPeriodicField& f, int n_modes);
/// Samples a basis expansion on the grid.
RealPeriodicField from_basis(const Eigen::VectorXd& coords, const GridPtr& grid);

/// Applies L1 or L2 pseudo-spectrally on the grid.
RealPeriodicField apply_operator(const RealPeriodicField& phi, const FractionalParams& p,
                                 OperatorKind which, const RealPeriodicField& v);

struct KernelResiduals {
  double l1_dphi;           ///< ||L1 phi'||
  double l2_phi;            ///< ||L2 phi||
  double l1_phi_plus;       ///< ||L1 phi + 2 phi^3||
  double norm_phi;          ///< ||phi||
  double norm_dphi;         ///< ||phi'||
  double norm_phi_cubed;    ///< ||phi^3||

  double rel_l1_dphi() const;
  double rel_l2_phi() const;
  double rel_l1_phi_plus() const;
};

struct SpectralReport {
  std::vector<double> eig_l1;
  std::vector<double> eig_l2;
  int n_l1 = 0;
  int z_l1 = 0;
  int n_l2 = 0;
  int z_l2 = 0;
  KernelResiduals kernel{};
  double eps_neg = 0.0;
  double eps_ker = 0.0;
  int n_modes = 0;
  /// Lowest L2 eigenvector sampled on the grid has no sign change.
  bool l2_ground_state_positive = false;
};

/// Threshold used for both zero and negative counts: 1e-6 (1 + omega).
double kernel_threshold(double omega);

int count_negative(const std::vector<double>& eig, double eps);
int count_zero(const std::vector<double>& eig, double eps);

SpectralReport spectral_report(const RealPeriodicField& f, const FractionalParams& p,
                               int n_modes = 256);

}  // namespace fnls
