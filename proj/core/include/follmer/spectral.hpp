#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

namespace follmer {

/// Periodic spatial grid on [-L_dom, L_dom) with N points (N a power of
/// two). Frequencies xi_m = pi m / L_dom, m in [-N/2, N/2), stored in FFT
/// index order.
struct SpectralGrid {
  std::size_t N;
  double L_dom;

  SpectralGrid(std::size_t n, double l) : N(n), L_dom(l) {
    if (n < 2 || (n & (n - 1)) != 0)
      throw std::invalid_argument("spectral grid: N must be a power of two");
    if (!(l > 0.0))
      throw std::invalid_argument("spectral grid: L_dom must be positive");
  }

  double dx() const { return 2.0 * L_dom / static_cast<double>(N); }
  double x(std::size_t i) const {
    return -L_dom + static_cast<double>(i) * dx();
  }
  /// Frequency of FFT bin j.
  double xi(std::size_t j) const {
    const auto half = N / 2;
    const double m = (j < half) ? static_cast<double>(j)
                                : static_cast<double>(j) - static_cast<double>(N);
    return M_PI * m / L_dom;
  }
};

using GridPtr = std::shared_ptr<const SpectralGrid>;

/// A complex field sampled on a SpectralGrid, with L2 inner-product norm.
struct GridField {
  GridPtr grid;
  std::vector<std::complex<double>> samples;

  GridField() = default;
  explicit GridField(GridPtr g)
      : grid(std::move(g)), samples(grid->N, {0.0, 0.0}) {}

  double l2_norm() const {
    double acc = 0.0;
    for (const auto& z : samples) acc += std::norm(z);
    return std::sqrt(acc * grid->dx());
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : samples) m = std::max(m, std::abs(z));
    return m;
  }

  GridField& operator+=(const GridField& other) {
    for (std::size_t i = 0; i < samples.size(); ++i)
      samples[i] += other.samples[i];
    return *this;
  }
  GridField& operator*=(std::complex<double> s) {
    for (auto& z : samples) z *= s;
    return *this;
  }
};

inline GridField vs_zero(const GridField& like) {
  return GridField(like.grid);
}
inline void vs_axpy(GridField& acc, double scalar, const GridField& v) {
  for (std::size_t i = 0; i < acc.samples.size(); ++i)
    acc.samples[i] += scalar * v.samples[i];
}
inline double vs_norm(const GridField& v) { return v.l2_norm(); }

/// Sample a scalar function of x onto a field.
GridField sample_field(const GridPtr& grid,
                       const std::function<std::complex<double>(double)>& fn);

/// A Fourier-multiplier operator: diagonal in frequency, applied via FFT.
/// All multipliers commute to rounding.
class MultiplierOperator {
 public:
  MultiplierOperator(const GridPtr& grid,
                     const std::function<std::complex<double>(double)>& symbol,
                     int domain_order = 0);

  GridField apply(const GridField& field) const;

  const std::vector<std::complex<double>>& symbol_values() const {
    return symbol_;
  }
  double max_real_part() const;
  int domain_order() const { return domain_order_; }

 private:
  GridPtr grid_;
  std::vector<std::complex<double>> symbol_;  // FFT bin order
  int domain_order_;
};

/// Heat semigroup exp(tau c d^2): symbol exp(-c xi^2 tau). tau >= 0.
MultiplierOperator heat_semigroup(const GridPtr& grid, double c, double tau);

/// Shift group [G(x)f](y) = f(y + b x): symbol exp(i xi b x).
MultiplierOperator shift_group(const GridPtr& grid, double b, double x);

/// Scalar group factor e^{b x}.
inline double scalar_group(double b, double x) { return std::exp(b * x); }

/// Generator C_k = a d^2 - (c_{2k}/(2k)!) b^{2k} d^{2k}. Solvable regimes:
/// k = 1 with a > b^2/2, or k even.
MultiplierOperator elliptic_generator(const GridPtr& grid, double a, double b,
                                      int k);

/// One Strang step of exp(dt i (d^4 + d^2 - g)): half potential phase,
/// full dispersive multiplier, half potential phase. Unitary.
GridField schrodinger_step(const GridField& g_field, double dt,
                           const GridField& field);

}  // namespace follmer
