#include "follmer/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "follmer/fft.hpp"

namespace follmer {

namespace {

// Catmull-Rom on unit-spaced samples with zero extension; `idx` is the
// fractional sample index.
template <class T>
T interp_samples(const std::vector<T>& s, double idx) {
  const auto n = static_cast<std::ptrdiff_t>(s.size());
  if (idx < -1.0 || idx > static_cast<double>(n)) return T{};
  const double fl = std::floor(idx);
  const auto i = static_cast<std::ptrdiff_t>(fl);
  const double u = idx - fl;
  auto at = [&](std::ptrdiff_t k) -> T {
    return (k >= 0 && k < n) ? s[static_cast<std::size_t>(k)] : T{};
  };
  const T p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
  const double u2 = u * u, u3 = u2 * u;
  return 0.5 * ((2.0 * p1) + (-p0 + p2) * u +
                (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * u2 +
                (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * u3);
}

// Catmull-Rom with clamped (constant) extension, for coefficient tables
// where zero extension would distort the boundary cells.
double interp_clamped(const std::vector<double>& s, double idx) {
  const auto n = static_cast<std::ptrdiff_t>(s.size());
  const double fl = std::floor(idx);
  const auto i = static_cast<std::ptrdiff_t>(fl);
  const double u = idx - fl;
  auto at = [&](std::ptrdiff_t k) {
    return s[static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(k, 0, n - 1))];
  };
  const double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
  const double u2 = u * u, u3 = u2 * u;
  return 0.5 * ((2.0 * p1) + (-p0 + p2) * u +
                (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * u2 +
                (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * u3);
}

// Hermite cubic on [0,1] with values (va, vb) and slopes (da, db).
double hermite(double va, double vb, double da, double db, double u) {
  const double u2 = u * u, u3 = u2 * u;
  return va * (2 * u3 - 3 * u2 + 1) + da * (u3 - 2 * u2 + u) +
         vb * (-2 * u3 + 3 * u2) + db * (u3 - u2);
}

double hermite_deriv(double va, double vb, double da, double db, double u) {
  const double u2 = u * u;
  return va * (6 * u2 - 6 * u) + da * (3 * u2 - 4 * u + 1) +
         vb * (-6 * u2 + 6 * u) + db * (3 * u2 - 2 * u);
}

}  // namespace

std::complex<double> interpolate_field(const GridField& field, double x) {
  const double idx = (x + field.grid->L_dom) / field.grid->dx();
  return interp_samples(field.samples, idx);
}

FlowShiftGroup::FlowShiftGroup(GridPtr grid, std::vector<double> g_samples)
    : grid_(std::move(grid)), g_(std::move(g_samples)) {
  if (g_.size() != grid_->N)
    throw std::invalid_argument("flow group: g_samples size mismatch");
  c1_ = *std::min_element(g_.begin(), g_.end());
  c2_ = *std::max_element(g_.begin(), g_.end());
  if (!(c1_ > 0.0))
    throw std::domain_error("flow group: g must be bounded below by c1 > 0");

  // h by per-cell Simpson on 1/g, midpoint g interpolated cubically.
  const std::size_t n = grid_->N;
  h_table_.resize(n);
  h_table_[0] = 0.0;
  const double dx = grid_->dx();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double gm = interp_clamped(g_, static_cast<double>(i) + 0.5);
    const double cell =
        dx / 6.0 * (1.0 / g_[i] + 4.0 / gm + 1.0 / g_[i + 1]);
    h_table_[i + 1] = h_table_[i] + cell;
  }
  // Close the box with the last (boundary-flat) cell.
  const double span =
      h_table_.back() + dx / g_.back();
  flow_grid_ = std::make_shared<SpectralGrid>(n, span / 2.0);
}

double FlowShiftGroup::h(double x) const {
  const std::size_t n = grid_->N;
  const double dx = grid_->dx();
  double idx = (x + grid_->L_dom) / dx;
  idx = std::clamp(idx, 0.0, static_cast<double>(n - 1));
  std::size_t i = static_cast<std::size_t>(idx);
  if (i >= n - 1) i = n - 2;
  const double u = idx - static_cast<double>(i);
  return hermite(h_table_[i], h_table_[i + 1], dx / g_[i], dx / g_[i + 1], u);
}

bool FlowShiftGroup::h_inverse(double y, double& x) const {
  const std::size_t n = grid_->N;
  if (y < h_table_.front() || y > h_table_.back()) return false;
  auto it = std::upper_bound(h_table_.begin(), h_table_.end(), y);
  std::size_t i = static_cast<std::size_t>(it - h_table_.begin());
  i = (i == 0) ? 0 : i - 1;
  if (i >= n - 1) i = n - 2;

  const double dx = grid_->dx();
  const double va = h_table_[i], vb = h_table_[i + 1];
  const double da = dx / g_[i], db = dx / g_[i + 1];
  // Newton with bisection safeguard on the Hermite cell.
  double lo = 0.0, hi = 1.0, u = (y - va) / (vb - va);
  for (int iter = 0; iter < 64; ++iter) {
    const double f = hermite(va, vb, da, db, u) - y;
    if (std::abs(f) < 1e-15 * std::max(1.0, std::abs(y))) break;
    if (f > 0.0)
      hi = u;
    else
      lo = u;
    const double d = hermite_deriv(va, vb, da, db, u);
    double next = (d != 0.0) ? u - f / d : 0.5 * (lo + hi);
    if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
    u = next;
  }
  x = grid_->x(i) + u * dx;
  return true;
}

FlowResult FlowShiftGroup::apply(double t, const GridField& field) const {
  if (field.grid->N != grid_->N)
    throw std::invalid_argument("flow group: field grid mismatch");
  FlowResult result;
  result.field = GridField(field.grid);

  const std::size_t n = grid_->N;
  const double dx = grid_->dx();

  // Edge-mass warning: any visible mass within 2% of the boundary.
  const std::size_t edge = std::max<std::size_t>(1, n / 50);
  double edge_mass = 0.0, total_mass = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double m = std::norm(field.samples[i]) * dx;
    total_mass += m;
    if (i < edge || i + edge >= n) edge_mass += m;
  }
  result.edge_warning = edge_mass > 1e-6 * std::max(total_mass, 1e-300);

  double clipped = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = h(grid_->x(i)) + t;
    double x_src = 0.0;
    if (h_inverse(y, x_src)) {
      result.field.samples[i] = interpolate_field(field, x_src);
    } else {
      clipped += std::norm(field.samples[i]) * dx;
    }
  }
  result.clipped_mass = std::sqrt(clipped);
  return result;
}

GridField FlowShiftGroup::quartic_decay(double s, const GridField& field) const {
  if (s < 0.0) throw std::domain_error("quartic_decay: s must be >= 0");
  const std::size_t n = grid_->N;
  const double dy = flow_grid_->dx();

  // To flow coordinates: u(y_i) = f(h^{-1}(y_i)).
  std::vector<std::complex<double>> u(n, {0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) {
    const double y = static_cast<double>(i) * dy;
    double x_src = 0.0;
    if (h_inverse(y, x_src)) u[i] = interpolate_field(field, x_src);
  }

  fft::forward(u);
  for (std::size_t j = 0; j < n; ++j) {
    const double xi = flow_grid_->xi(j);
    const double xi2 = xi * xi;
    u[j] *= std::exp(-s * xi2 * xi2);
  }
  fft::inverse(u);

  // Back to physical coordinates: out(x_i) = u(h(x_i)).
  GridField out(field.grid);
  for (std::size_t i = 0; i < n; ++i) {
    const double idx = h(grid_->x(i)) / dy;
    out.samples[i] = interp_samples(u, idx);
  }
  return out;
}

}  // namespace follmer
