#include "follmer/pathgen.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "follmer/fft.hpp"
#include "follmer/rng.hpp"

namespace follmer {

namespace {

// Autocovariance of fBm increments on a grid of step dt:
// gamma(k) = dt^{2H}/2 (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}).
double increment_autocov(double H, double dt, std::size_t k) {
  const double e = 2.0 * H;
  const double kk = static_cast<double>(k);
  const double raw = 0.5 * (std::pow(kk + 1.0, e) - 2.0 * std::pow(kk, e) +
                            std::pow(std::abs(kk - 1.0), e));
  return std::pow(dt, e) * raw;
}

}  // namespace

SamplePath gen_fbm(double H, int level, std::uint64_t seed) {
  if (!(H > 0.0 && H < 1.0))
    throw std::domain_error("gen_fbm: H must be in (0,1)");
  if (level < 2 || level > 24)
    throw std::domain_error("gen_fbm: level must be in [2,24]");

  const std::size_t n = std::size_t{1} << level;  // increments
  const std::size_t m = 2 * n;                    // circulant size
  const double dt = 1.0 / static_cast<double>(n);

  // First row of the circulant embedding of the Toeplitz covariance.
  std::vector<std::complex<double>> circ(m);
  for (std::size_t k = 0; k <= n; ++k) circ[k] = increment_autocov(H, dt, k);
  for (std::size_t k = 1; k < n; ++k) circ[m - k] = circ[k];

  fft::forward(circ);
  bool clipped = false;
  std::vector<double> lambda(m);
  for (std::size_t k = 0; k < m; ++k) {
    double ev = circ[k].real();
    if (ev < 0.0) {
      ev = 0.0;
      clipped = true;
    }
    lambda[k] = ev;
  }

  // Conjugate-symmetric Gaussian spectrum; FFT yields a real stationary
  // sequence with covariance gamma.
  GaussianRng rng(seed);
  std::vector<std::complex<double>> spec(m);
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));
  spec[0] = std::sqrt(lambda[0]) * rng() * inv_sqrt_m;
  for (std::size_t k = 1; k < n; ++k) {
    const double a = rng();
    const double b = rng();
    const double s = std::sqrt(lambda[k] * 0.5) * inv_sqrt_m;
    spec[k] = std::complex<double>(s * a, s * b);
    spec[m - k] = std::conj(spec[k]);
  }
  spec[n] = std::sqrt(lambda[n]) * rng() * inv_sqrt_m;

  fft::forward(spec);

  SamplePath path;
  path.times.resize(n + 1);
  path.values.resize(n + 1);
  path.seed = seed;
  path.label = "fbm(H=" + std::to_string(H) + ",L=" + std::to_string(level) +
               ",seed=" + std::to_string(seed) + ")" +
               (clipped ? " [eigenvalue-clipped]" : "");
  path.times[0] = 0.0;
  path.values[0] = 0.0;
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    acc += spec[j].real();
    path.times[j + 1] = static_cast<double>(j + 1) * dt;
    path.values[j + 1] = acc;
  }
  path.times[n] = 1.0;
  return path;
}

SamplePath gen_takagi_landsberg(double H, int depth, int level) {
  if (!(H > 0.0 && H < 1.0))
    throw std::domain_error("takagi_landsberg: H must be in (0,1)");
  if (depth > level)
    throw std::domain_error(
        "takagi_landsberg: depth must not exceed grid level");
  if (depth < 0 || level < 0)
    throw std::domain_error("takagi_landsberg: negative depth or level");

  const std::size_t n = std::size_t{1} << level;
  SamplePath path;
  path.times.resize(n + 1);
  path.values.assign(n + 1, 0.0);
  path.label = "takagi(H=" + std::to_string(H) +
               ",depth=" + std::to_string(depth) + ")";

  for (std::size_t i = 0; i <= n; ++i)
    path.times[i] = static_cast<double>(i) / static_cast<double>(n);
  path.times[n] = 1.0;

  // At Faber-Schauder level m only the tent k = floor(2^m t) is non-zero.
  for (int m = 0; m <= depth; ++m) {
    const double amp = std::pow(2.0, m * (0.5 - H)) * std::pow(2.0, -0.5 * m);
    const double scale = std::pow(2.0, m);
    for (std::size_t i = 0; i <= n; ++i) {
      const double u = scale * path.times[i];
      double frac = u - std::floor(u);
      if (path.times[i] >= 1.0) frac = 0.0;
      path.values[i] += amp * std::min(frac, 1.0 - frac);
    }
  }
  return path;
}

SamplePath gen_deterministic(DeterministicKind kind, double param, int level) {
  if (level < 0) throw std::domain_error("gen_deterministic: negative level");
  const std::size_t n = std::size_t{1} << level;
  SamplePath path;
  path.times.resize(n + 1);
  path.values.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n);
    path.times[i] = t;
    switch (kind) {
      case DeterministicKind::Linear:
        path.values[i] = param * t;
        break;
      case DeterministicKind::Constant:
        path.values[i] = param;
        break;
      case DeterministicKind::Monomial:
        path.values[i] = std::pow(t, param);
        break;
    }
  }
  path.times[n] = 1.0;
  switch (kind) {
    case DeterministicKind::Linear:
      path.label = "linear(" + std::to_string(param) + ")";
      break;
    case DeterministicKind::Constant:
      path.label = "constant(" + std::to_string(param) + ")";
      break;
    case DeterministicKind::Monomial:
      path.label = "monomial(" + std::to_string(param) + ")";
      break;
  }
  return path;
}

}  // namespace follmer
