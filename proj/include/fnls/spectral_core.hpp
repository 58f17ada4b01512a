// Periodic Fourier discretization on [-pi, pi).
//
// Coefficient convention: a field sampled at x_j = -pi + 2*pi*j/N is written as
//
//     f(x_j) = sum_k c_k exp(i k x_j),   k = -N/2+1, ..., N/2,
//
// so c_k are the true Fourier coefficients of the trigonometric interpolant
// (the forward transform carries the 1/N).  Storage uses transform ordering:
// index j holds k = j for j <= N/2 and k = j - N otherwise.  The Nyquist
// mode k = N/2 is kept real and its multiplier is |N/2|^{2s}.
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace fnls {

using complex = std::complex<double>;

class FourierGrid {
 public:
  /// Throws std::invalid_argument unless n_points is even and >= 8.
  explicit FourierGrid(std::size_t n_points);

  std::size_t size() const { return nodes_.size(); }
  double spacing() const;
  std::span<const double> nodes() const { return nodes_; }
  std::span<const int> wavenumbers() const { return wavenumbers_; }

  /// Storage index of wavenumber k, |k| <= N/2 (k = -N/2 maps to the Nyquist slot).
  std::size_t index_of(int k) const;

 private:
  std::vector<double> nodes_;
  std::vector<int> wavenumbers_;
};

using GridPtr = std::shared_ptr<const FourierGrid>;

GridPtr make_grid(std::size_t n_points);

/// Fractional order s in (0, 1] and frequency omega > 0.
struct FractionalParams {
  double s;
  double omega;

  FractionalParams(double s, double omega);
};

class RealPeriodicField {
 public:
  /// Throws std::invalid_argument on a length mismatch or a non-finite entry.
  RealPeriodicField(GridPtr grid, std::vector<double> values);

  static RealPeriodicField constant(GridPtr grid, double value);
  static RealPeriodicField sample(GridPtr grid, const std::function<double(double)>& f);

  const FourierGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

class SpectralCoeffs {
 public:
  SpectralCoeffs() = default;
  explicit SpectralCoeffs(std::vector<complex> coeffs);

  std::size_t size() const { return coeffs_.size(); }
  int nyquist() const { return static_cast<int>(coeffs_.size() / 2); }

  /// Coefficient of exp(i k x); |k| <= N/2.
  complex at(int k) const { return coeffs_[slot(k)]; }
  complex& at(int k) { return coeffs_[slot(k)]; }

  /// Wavenumber stored at index j.
  int wavenumber(std::size_t j) const {
    const auto n = coeffs_.size();
    return j <= n / 2 ? static_cast<int>(j) : static_cast<int>(j) - static_cast<int>(n);
  }

  std::span<const complex> data() const { return coeffs_; }
  std::span<complex> data() { return coeffs_; }

 private:
  std::size_t slot(int k) const {
    const auto n = static_cast<long>(coeffs_.size());
    return static_cast<std::size_t>(((k % n) + n) % n);
  }

  std::vector<complex> coeffs_;
};

// Transforms.
SpectralCoeffs forward(const RealPeriodicField& f);
RealPeriodicField inverse(const SpectralCoeffs& c, const GridPtr& grid);

/// |k|^{2s}; zero at k = 0.
double fractional_symbol(int k, double s);

RealPeriodicField fractional_laplacian(const RealPeriodicField& f, double s);
SpectralCoeffs fractional_laplacian(const SpectralCoeffs& c, double s);

/// Spectral first derivative; the Nyquist coefficient is dropped.
RealPeriodicField derivative(const RealPeriodicField& f);

/// Pointwise cube evaluated on a 2x zero-padded grid and truncated back, so the
/// result carries no aliasing from modes above N/2.
RealPeriodicField cube(const RealPeriodicField& f);
SpectralCoeffs cube(const SpectralCoeffs& c);

/// Even part: coefficients replaced by their real parts, i.e. (f(x) + f(-x))/2.
SpectralCoeffs even_part(const SpectralCoeffs& c);

double sup_norm(std::span<const double> v);
double sup_norm(const SpectralCoeffs& c);

/// L2 inner product over [-pi, pi] via Parseval: 2*pi*sum Re(a_k conj(b_k)).
double inner_product(const SpectralCoeffs& a, const SpectralCoeffs& b);

struct Residual {
  RealPeriodicField field;
  double res_norm;
};

/// S f = (-Delta)^s f + omega f - f^3 and its sup norm.
Residual residual(const RealPeriodicField& f, const FractionalParams& p);

/// Sup norm of S applied to a spectrally represented iterate, without
/// re-sampling f through physical values.
double residual_norm(const SpectralCoeffs& c, const SpectralCoeffs& c_cubed,
                     const FractionalParams& p);

// Conserved quantities (rectangle rule on the grid, exact for trigonometric
// polynomials of degree < N).

/// Unhalved integral of f^2 over [-pi, pi].
double mass(const RealPeriodicField& f);
/// F(f) = 1/2 int f^2.
double charge(const RealPeriodicField& f);
/// E(f) = 1/2 int |(-Delta)^{s/2} f|^2 - 1/4 int f^4.
double energy(const RealPeriodicField& f, double s);
/// G(f) = E(f) + omega F(f).
double lyapunov(const RealPeriodicField& f, const FractionalParams& p);
/// B(f) = 1/2 int |(-Delta)^{s/2} f|^2 + omega f^2.
double quadratic_form(const RealPeriodicField& f, const FractionalParams& p);

/// Discrete L2 norm sqrt(h * sum v_j^2).
double l2_norm(const RealPeriodicField& f);

}  // namespace fnls
