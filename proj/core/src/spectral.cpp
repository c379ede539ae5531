#include "follmer/spectral.hpp"

#include <algorithm>

#include "follmer/fft.hpp"
#include "follmer/variation.hpp"

namespace follmer {

GridField sample_field(const GridPtr& grid,
                       const std::function<std::complex<double>(double)>& fn) {
  GridField field(grid);
  for (std::size_t i = 0; i < grid->N; ++i) field.samples[i] = fn(grid->x(i));
  return field;
}

MultiplierOperator::MultiplierOperator(
    const GridPtr& grid,
    const std::function<std::complex<double>(double)>& symbol,
    int domain_order)
    : grid_(grid), symbol_(grid->N), domain_order_(domain_order) {
  for (std::size_t j = 0; j < grid->N; ++j) symbol_[j] = symbol(grid->xi(j));
}

GridField MultiplierOperator::apply(const GridField& field) const {
  if (field.grid->N != grid_->N)
    throw std::invalid_argument("multiplier: grid size mismatch");

  // Real inputs with a Hermitian symbol must stay real; detect both and
  // re-project the rounding dust.
  double max_im = 0.0;
  double max_abs = 0.0;
  for (const auto& z : field.samples) {
    max_im = std::max(max_im, std::abs(z.imag()));
    max_abs = std::max(max_abs, std::abs(z));
  }
  const bool input_real = max_im <= 1e-13 * std::max(1.0, max_abs);

  bool hermitian = true;
  const std::size_t n = grid_->N;
  for (std::size_t j = 1; j < n / 2 && hermitian; ++j)
    hermitian = std::abs(symbol_[j] - std::conj(symbol_[n - j])) <=
                1e-12 * (1.0 + std::abs(symbol_[j]));

  GridField out = field;
  fft::forward(out.samples);
  for (std::size_t j = 0; j < n; ++j) out.samples[j] *= symbol_[j];
  if (input_real && hermitian) {
    // Nyquist bin has no conjugate partner; keep its contribution real.
    out.samples[n / 2] = out.samples[n / 2].real();
  }
  fft::inverse(out.samples);
  if (input_real && hermitian)
    for (auto& z : out.samples) z = z.real();
  return out;
}

double MultiplierOperator::max_real_part() const {
  double m = symbol_[0].real();
  for (const auto& s : symbol_) m = std::max(m, s.real());
  return m;
}

MultiplierOperator heat_semigroup(const GridPtr& grid, double c, double tau) {
  if (!(c > 0.0)) throw std::domain_error("heat_semigroup: c must be > 0");
  if (tau < 0.0)
    throw std::domain_error("heat_semigroup: tau must be >= 0 (semigroup)");
  return MultiplierOperator(
      grid,
      [c, tau](double xi) {
        return std::complex<double>(std::exp(-c * xi * xi * tau), 0.0);
      },
      2);
}

MultiplierOperator shift_group(const GridPtr& grid, double b, double x) {
  return MultiplierOperator(
      grid,
      [b, x](double xi) {
        return std::exp(std::complex<double>(0.0, xi * b * x));
      },
      0);
}

MultiplierOperator elliptic_generator(const GridPtr& grid, double a, double b,
                                      int k) {
  if (k < 1) throw std::domain_error("elliptic_generator: k must be >= 1");
  const bool wiener_regime = (k == 1) && (a - 0.5 * b * b > 0.0);
  const bool even_regime = (k % 2 == 0);
  if (!wiener_regime && !even_regime)
    throw std::domain_error(
        "elliptic_generator: parameters outside the solvable regimes "
        "(need k = 1 with a > b^2/2, or k even)");

  const double c2k = gaussian_abs_moment(2 * k);
  double fact = 1.0;
  for (int q = 2; q <= 2 * k; ++q) fact *= static_cast<double>(q);
  const double coeff = c2k / fact * std::pow(b, 2 * k);
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;  // (i xi)^{2k} = (-1)^k xi^{2k}

  MultiplierOperator op(
      grid,
      [a, coeff, sign, k](double xi) {
        const double xi2 = xi * xi;
        return std::complex<double>(
            -a * xi2 - coeff * sign * std::pow(xi2, k), 0.0);
      },
      2 * k);
  if (op.max_real_part() > 1e-12)
    throw std::domain_error(
        "elliptic_generator: symbol real part unbounded above on the grid");
  return op;
}

GridField schrodinger_step(const GridField& g_field, double dt,
                           const GridField& field) {
  if (!(dt > 0.0)) throw std::domain_error("schrodinger_step: dt must be > 0");
  if (g_field.grid->N != field.grid->N)
    throw std::invalid_argument("schrodinger_step: grid mismatch");

  GridField out = field;
  const std::size_t n = field.grid->N;
  std::vector<std::complex<double>> half_phase(n);
  for (std::size_t i = 0; i < n; ++i)
    half_phase[i] =
        std::exp(std::complex<double>(0.0, -0.5 * dt * g_field.samples[i].real()));

  for (std::size_t i = 0; i < n; ++i) out.samples[i] *= half_phase[i];
  fft::forward(out.samples);
  for (std::size_t j = 0; j < n; ++j) {
    const double xi = field.grid->xi(j);
    const double xi2 = xi * xi;
    out.samples[j] *= std::exp(std::complex<double>(0.0, dt * (xi2 * xi2 - xi2)));
  }
  fft::inverse(out.samples);
  for (std::size_t i = 0; i < n; ++i) out.samples[i] *= half_phase[i];
  return out;
}

}  // namespace follmer
