#include "fnls/spectral_core.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fnls {

namespace {

constexpr double kPi = std::numbers::pi;

// FFTW's planner is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Complex-to-complex transform pair of one size with its own buffers.
class Transform {
 public:
  explicit Transform(std::size_t n) : n_(n) {
    in_ = fftw_alloc_complex(n);
    out_ = fftw_alloc_complex(n);
    std::lock_guard lock(planner_mutex());
    const int ni = static_cast<int>(n);
    fwd_ = fftw_plan_dft_1d(ni, in_, out_, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(ni, in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  Transform(const Transform&) = delete;
  Transform& operator=(const Transform&) = delete;
  ~Transform() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(in_);
    fftw_free(out_);
  }

  // Real samples on x_j = -pi + 2 pi j / n -> true coefficients.
  std::vector<complex> forward(std::span<const double> v) {
    for (std::size_t j = 0; j < n_; ++j) {
      in_[j][0] = v[j];
      in_[j][1] = 0.0;
    }
    fftw_execute(fwd_);
    std::vector<complex> c(n_);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      // exp(i k x_j) = (-1)^k exp(2 pi i j k / n)
      const double sign = (j % 2 == 0) ? scale : -scale;
      c[j] = complex(out_[j][0], out_[j][1]) * sign;
    }
    return c;
  }

  std::vector<double> inverse(std::span<const complex> c) {
    for (std::size_t j = 0; j < n_; ++j) {
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      in_[j][0] = sign * c[j].real();
      in_[j][1] = sign * c[j].imag();
    }
    fftw_execute(bwd_);
    std::vector<double> v(n_);
    for (std::size_t j = 0; j < n_; ++j) v[j] = out_[j][0];
    return v;
  }

 private:
  std::size_t n_;
  fftw_complex* in_;
  fftw_complex* out_;
  fftw_plan fwd_;
  fftw_plan bwd_;
};

// One transform per size per thread.
Transform& transform_for(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<Transform>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Transform>(n);
  return *slot;
}

std::vector<double> to_values(const SpectralCoeffs& c) {
  return transform_for(c.size()).inverse(c.data());
}

void check_same_grid(std::size_t field_size, std::size_t coeff_size) {
  if (field_size != coeff_size) {
    throw std::invalid_argument("coefficient count " + std::to_string(coeff_size) +
                                " does not match grid size " + std::to_string(field_size));
  }
}

double integral_of_fourth_power(std::span<const double> v, double h) {
  double acc = 0.0;
  for (double x : v) acc += x * x * x * x;
  return acc * h;
}

// int |(-Delta)^{s/2} f|^2 = 2 pi sum |k|^{2s} |c_k|^2
double dirichlet_form(const SpectralCoeffs& c, double s) {
  double acc = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    acc += fractional_symbol(c.wavenumber(j), s) * std::norm(c.data()[j]);
  }
  return 2.0 * kPi * acc;
}

}  // namespace

FourierGrid::FourierGrid(std::size_t n_points) {
  if (n_points < 8 || n_points % 2 != 0) {
    throw std::invalid_argument("grid size must be even and at least 8, got " +
                                std::to_string(n_points));
  }
  nodes_.resize(n_points);
  wavenumbers_.resize(n_points);
  const double h = 2.0 * kPi / static_cast<double>(n_points);
  const long n = static_cast<long>(n_points);
  for (long j = 0; j < n; ++j) {
    nodes_[j] = -kPi + h * static_cast<double>(j);
    wavenumbers_[j] = static_cast<int>(j <= n / 2 ? j : j - n);
  }
}

double FourierGrid::spacing() const { return 2.0 * kPi / static_cast<double>(size()); }

std::size_t FourierGrid::index_of(int k) const {
  const long n = static_cast<long>(size());
  if (std::abs(static_cast<long>(k)) > n / 2) {
    throw std::out_of_range("wavenumber " + std::to_string(k) + " outside the grid band");
  }
  return static_cast<std::size_t>(((k % n) + n) % n);
}

GridPtr make_grid(std::size_t n_points) { return std::make_shared<const FourierGrid>(n_points); }

FractionalParams::FractionalParams(double s_, double omega_) : s(s_), omega(omega_) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw std::invalid_argument("fractional order s must lie in (0, 1], got " + std::to_string(s));
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("frequency omega must be positive, got " + std::to_string(omega));
  }
}

RealPeriodicField::RealPeriodicField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("field requires a grid");
  if (values_.size() != grid_->size()) {
    throw std::invalid_argument("field has " + std::to_string(values_.size()) +
                                " values for a grid of " + std::to_string(grid_->size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("field contains a non-finite value");
  }
}

RealPeriodicField RealPeriodicField::constant(GridPtr grid, double value) {
  const auto n = grid->size();
  return RealPeriodicField(std::move(grid), std::vector<double>(n, value));
}

RealPeriodicField RealPeriodicField::sample(GridPtr grid, const std::function<double(double)>& f) {
  std::vector<double> v;
  v.reserve(grid->size());
  for (double x : grid->nodes()) v.push_back(f(x));
  return RealPeriodicField(std::move(grid), std::move(v));
}

SpectralCoeffs::SpectralCoeffs(std::vector<complex> coeffs) : coeffs_(std::move(coeffs)) {}

SpectralCoeffs forward(const RealPeriodicField& f) {
  return SpectralCoeffs(transform_for(f.size()).forward(f.values()));
}

RealPeriodicField inverse(const SpectralCoeffs& c, const GridPtr& grid) {
  check_same_grid(grid->size(), c.size());
  return RealPeriodicField(grid, to_values(c));
}

double fractional_symbol(int k, double s) {
  if (k == 0) return 0.0;
  return std::pow(std::abs(static_cast<double>(k)), 2.0 * s);
}

SpectralCoeffs fractional_laplacian(const SpectralCoeffs& c, double s) {
  SpectralCoeffs out = c;
  auto d = out.data();
  for (std::size_t j = 0; j < d.size(); ++j) d[j] *= fractional_symbol(out.wavenumber(j), s);
  // Nyquist stays real.
  const auto ny = static_cast<std::size_t>(out.nyquist());
  d[ny] = complex(d[ny].real(), 0.0);
  return out;
}

RealPeriodicField fractional_laplacian(const RealPeriodicField& f, double s) {
  return inverse(fractional_laplacian(forward(f), s), f.grid_ptr());
}

RealPeriodicField derivative(const RealPeriodicField& f) {
  SpectralCoeffs c = forward(f);
  auto d = c.data();
  for (std::size_t j = 0; j < d.size(); ++j) d[j] *= complex(0.0, c.wavenumber(j));
  d[static_cast<std::size_t>(c.nyquist())] = 0.0;
  return inverse(c, f.grid_ptr());
}

SpectralCoeffs cube(const SpectralCoeffs& c) {
  const std::size_t n = c.size();
  const int ny = c.nyquist();
  const std::size_t np = 2 * n;

  std::vector<complex> padded(np, complex(0.0, 0.0));
  const auto slot = [np](int k) {
    const long m = static_cast<long>(np);
    return static_cast<std::size_t>(((k % m) + m) % m);
  };
  for (int k = -ny + 1; k < ny; ++k) padded[slot(k)] = c.at(k);
  // Split the Nyquist coefficient over +-N/2 so the padded interpolant is real.
  padded[slot(ny)] = 0.5 * c.at(ny).real();
  padded[slot(-ny)] = 0.5 * c.at(ny).real();

  auto& t = transform_for(np);
  std::vector<double> v = t.inverse(padded);
  for (double& x : v) x = x * x * x;
  std::vector<complex> g = t.forward(v);

  std::vector<complex> out(n);
  SpectralCoeffs result(std::move(out));
  for (int k = -ny + 1; k < ny; ++k) result.at(k) = g[slot(k)];
  result.at(ny) = complex((g[slot(ny)] + g[slot(-ny)]).real(), 0.0);
  return result;
}

RealPeriodicField cube(const RealPeriodicField& f) { return inverse(cube(forward(f)), f.grid_ptr()); }

SpectralCoeffs even_part(const SpectralCoeffs& c) {
  SpectralCoeffs out = c;
  for (auto& z : out.data()) z = complex(z.real(), 0.0);
  return out;
}

double sup_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double sup_norm(const SpectralCoeffs& c) { return sup_norm(to_values(c)); }

double inner_product(const SpectralCoeffs& a, const SpectralCoeffs& b) {
  check_same_grid(a.size(), b.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    acc += (a.data()[j] * std::conj(b.data()[j])).real();
  }
  return 2.0 * kPi * acc;
}

Residual residual(const RealPeriodicField& f, const FractionalParams& p) {
  const RealPeriodicField lap = fractional_laplacian(f, p.s);
  const RealPeriodicField f3 = cube(f);
  std::vector<double> r(f.size());
  for (std::size_t j = 0; j < r.size(); ++j) r[j] = lap[j] + p.omega * f[j] - f3[j];
  const double norm = sup_norm(r);
  return {RealPeriodicField(f.grid_ptr(), std::move(r)), norm};
}

double residual_norm(const SpectralCoeffs& c, const SpectralCoeffs& c_cubed,
                     const FractionalParams& p) {
  check_same_grid(c.size(), c_cubed.size());
  SpectralCoeffs r = c;
  auto d = r.data();
  for (std::size_t j = 0; j < d.size(); ++j) {
    d[j] = (fractional_symbol(r.wavenumber(j), p.s) + p.omega) * d[j] - c_cubed.data()[j];
  }
  return sup_norm(r);
}

double mass(const RealPeriodicField& f) {
  double acc = 0.0;
  for (double x : f.values()) acc += x * x;
  return acc * f.grid().spacing();
}

double charge(const RealPeriodicField& f) { return 0.5 * mass(f); }

double energy(const RealPeriodicField& f, double s) {
  return 0.5 * dirichlet_form(forward(f), s) -
         0.25 * integral_of_fourth_power(f.values(), f.grid().spacing());
}

double lyapunov(const RealPeriodicField& f, const FractionalParams& p) {
  return energy(f, p.s) + p.omega * charge(f);
}

double quadratic_form(const RealPeriodicField& f, const FractionalParams& p) {
  return 0.5 * (dirichlet_form(forward(f), p.s) + p.omega * mass(f));
}

double l2_norm(const RealPeriodicField& f) { return std::sqrt(mass(f)); }

}  // namespace fnls
