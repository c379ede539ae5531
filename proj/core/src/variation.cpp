#include "follmer/variation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace follmer {

double CumulativeVariation::at(double t) const {
  if (t < points.front()) return 0.0;
  auto it = std::upper_bound(points.begin(), points.end(), t);
  const std::size_t idx = static_cast<std::size_t>(it - points.begin()) - 1;
  return cumulative[idx];
}

double gaussian_abs_moment(int p) {
  if (p < 2 || p % 2 != 0)
    throw std::domain_error("gaussian_abs_moment: p must be even and >= 2");
  double c = 1.0;
  for (int q = 4; q <= p; q += 2) c *= static_cast<double>(q - 1);
  return c;
}

CumulativeVariation empirical_pth_variation(const SamplePath& path,
                                            const Partition& partition,
                                            int p) {
  if (p < 2 || p % 2 != 0)
    throw std::domain_error("empirical_pth_variation: p must be even >= 2");
  CumulativeVariation out;
  out.points = partition.points;
  out.cumulative.resize(partition.points.size());
  out.cumulative[0] = 0.0;
  double acc = 0.0;
  double prev = path.at(partition.points[0]);
  for (std::size_t j = 1; j < partition.points.size(); ++j) {
    const double cur = path.at(partition.points[j]);
    acc += std::pow(std::abs(cur - prev), p);
    out.cumulative[j] = acc;
    prev = cur;
  }
  return out;
}

VariationEstimate variation_limit(const SamplePath& path,
                                  const PartitionSequence& seq, int p,
                                  const std::vector<int>& levels) {
  if (levels.empty())
    throw std::domain_error("variation_limit: empty level list");
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i] <= levels[i - 1])
      throw std::domain_error("variation_limit: levels must be increasing");
  if (seq.kind == PartitionKind::Dyadic && levels.back() > path.level())
    throw std::domain_error(
        "variation_limit: finest dyadic level exceeds path grid level");

  VariationEstimate est;
  est.p = p;
  est.levels = levels;
  est.cumulative.reserve(levels.size());
  for (int n : levels)
    est.cumulative.push_back(
        empirical_pth_variation(path, make_partition(seq, n), p));

  const CumulativeVariation& finest = est.cumulative.back();
  est.limit_grid = finest.points;
  est.limit_values = finest.cumulative;

  est.gap_to_finest.assign(levels.size(), 0.0);
  est.gap_to_next.assign(levels.size(), 0.0);
  for (std::size_t l = 0; l + 1 < levels.size(); ++l) {
    double gap_fin = 0.0;
    double gap_next = 0.0;
    const CumulativeVariation& next = est.cumulative[l + 1];
    for (std::size_t i = 0; i < est.limit_grid.size(); ++i) {
      const double t = est.limit_grid[i];
      const double v = est.cumulative[l].at(t);
      gap_fin = std::max(gap_fin, std::abs(v - est.limit_values[i]));
      gap_next = std::max(gap_next, std::abs(v - next.at(t)));
    }
    est.gap_to_finest[l] = gap_fin;
    est.gap_to_next[l] = gap_next;
  }
  return est;
}

std::vector<double> variation_derivative(const VariationEstimate& est,
                                         int window) {
  const std::vector<double>& grid = est.limit_grid;
  const std::vector<double>& vals = est.limit_values;
  const std::size_t n = grid.size();
  if (n < 2) throw std::domain_error("variation_derivative: degenerate grid");
  if (window < 1) window = 1;

  std::vector<double> deriv(n);
  const std::ptrdiff_t w = window;
  for (std::size_t i = 0; i < n; ++i) {
    std::ptrdiff_t lo = static_cast<std::ptrdiff_t>(i) - w;
    std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(i) + w;
    lo = std::max<std::ptrdiff_t>(lo, 0);
    hi = std::min<std::ptrdiff_t>(hi, static_cast<std::ptrdiff_t>(n) - 1);
    const double dt = grid[static_cast<std::size_t>(hi)] -
                      grid[static_cast<std::size_t>(lo)];
    const double dv = vals[static_cast<std::size_t>(hi)] -
                      vals[static_cast<std::size_t>(lo)];
    deriv[i] = std::max(0.0, dv / dt);
  }
  return deriv;
}

VariationEstimate theoretical_variation(int p, double slope, int grid_level) {
  if (p < 2 || p % 2 != 0)
    throw std::domain_error("theoretical_variation: p must be even >= 2");
  VariationEstimate est;
  est.p = p;
  est.levels = {grid_level};
  const std::size_t n = std::size_t{1} << grid_level;
  CumulativeVariation cum;
  cum.points.resize(n + 1);
  cum.cumulative.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n);
    cum.points[i] = t;
    cum.cumulative[i] = slope * t;
  }
  est.cumulative.push_back(cum);
  est.limit_grid = cum.points;
  est.limit_values = cum.cumulative;
  est.gap_to_finest = {0.0};
  est.gap_to_next = {0.0};
  return est;
}

}  // namespace follmer
