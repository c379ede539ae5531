#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "follmer/functional.hpp"
#include "follmer/path.hpp"
#include "follmer/variation.hpp"

namespace follmer {

/// Compensated Riemann sum over one partition:
/// sum over [t_j,t_{j+1}] of sum_{k=1}^{p-1} (1/k!) d2^k f(t_j, w_{t_j})
/// (w_{t_{j+1} ^ t} - w_{t_j ^ t})^k, with w read off the path grid
/// exactly at partition points.
template <class V>
V compensated_sum(const SmoothFunctional<V>& F, const SamplePath& path,
                  const Partition& partition, double t) {
  F.validate();
  if (!(t > 0.0 && t <= 1.0))
    throw std::domain_error("compensated_sum: t must lie in (0,1]");

  V acc = vs_zero(F.value(0.0, path.at(0.0)));
  std::vector<double> inv_fact(static_cast<std::size_t>(F.p));
  inv_fact[0] = 1.0;
  for (int k = 2; k < F.p; ++k)
    inv_fact[static_cast<std::size_t>(k - 1)] =
        inv_fact[static_cast<std::size_t>(k - 2)] / static_cast<double>(k);

  for (std::size_t j = 0; j + 1 < partition.points.size(); ++j) {
    const double tj = partition.points[j];
    if (tj >= t) break;
    const double tj1 = partition.points[j + 1];
    const double w_j = path.at(std::min(tj, t));
    const double w_j1 = path.at(std::min(tj1, t));
    const double dw = w_j1 - w_j;
    const double w_anchor = path.at(tj);
    double dw_pow = 1.0;
    for (int k = 1; k <= F.p - 1; ++k) {
      dw_pow *= dw;
      vs_axpy(acc, inv_fact[static_cast<std::size_t>(k - 1)] * dw_pow,
              F.dxk[static_cast<std::size_t>(k - 1)](tj, w_anchor));
    }
  }
  return acc;
}

template <class V>
struct FollmerIntegral {
  V value;                          // finest-level compensated sum
  std::vector<V> level_values;      // one per level
  std::vector<double> level_norms;  // norms of level_values
  bool converged = false;
};

/// Compensated sums along the partition sequence; converged iff the last
/// two levels differ in norm by less than tol_rel * (1 + |last|).
template <class V>
FollmerIntegral<V> follmer_integral(const SmoothFunctional<V>& F,
                                    const SamplePath& path,
                                    const PartitionSequence& seq, double t,
                                    const std::vector<int>& levels,
                                    double tol_rel = 1e-2) {
  if (levels.empty())
    throw std::domain_error("follmer_integral: empty level list");
  FollmerIntegral<V> out;
  for (int n : levels) {
    out.level_values.push_back(
        compensated_sum(F, path, make_partition(seq, n), t));
    out.level_norms.push_back(vs_norm(out.level_values.back()));
  }
  out.value = out.level_values.back();
  if (levels.size() >= 2) {
    V diff = out.level_values.back();
    vs_axpy(diff, -1.0, out.level_values[out.level_values.size() - 2]);
    out.converged =
        vs_norm(diff) < tol_rel * (1.0 + vs_norm(out.level_values.back()));
  } else {
    out.converged = true;
  }
  return out;
}

/// Trapezoid quadrature of u -> integrand(u, w_u) against du on the grid
/// points of `grid` that do not exceed t (t appended if needed).
template <class V, class Fn>
V trapezoid_du(const Fn& integrand, const SamplePath& path,
               const std::vector<double>& grid, double t) {
  V acc = vs_zero(integrand(0.0, path.at(0.0)));
  double u_prev = grid.front();
  V f_prev = integrand(u_prev, path.at(u_prev));
  for (std::size_t i = 1; i < grid.size() && u_prev < t; ++i) {
    const double u = std::min(grid[i], t);
    if (u <= u_prev) continue;
    V f_cur = integrand(u, path.at(u));
    const double h = 0.5 * (u - u_prev);
    vs_axpy(acc, h, f_prev);
    vs_axpy(acc, h, f_cur);
    u_prev = u;
    f_prev = f_cur;
  }
  return acc;
}

/// Left Riemann-Stieltjes sum of the integrand against the cumulative
/// variation values on their grid, truncated at t.
template <class V, class Fn>
V stieltjes_dvariation(const Fn& integrand, const SamplePath& path,
                       const std::vector<double>& grid,
                       const std::vector<double>& values, double t) {
  V acc = vs_zero(integrand(0.0, path.at(0.0)));
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (grid[i] >= t) break;
    const double dv = values[i + 1] - values[i];
    vs_axpy(acc, dv, integrand(grid[i], path.at(grid[i])));
  }
  return acc;
}

struct ResidualReport {
  std::vector<int> levels;
  std::vector<double> residuals;
  double final_residual = 0.0;
};

/// Defect of the change-of-variable formula at each level:
/// | f(t,w_t) - f(0,w_0) - int d1f du - (1/p!) int d2^p f d[w]_p
///   - compensated_sum(level) |.
template <class V>
ResidualReport ito_follmer_residual(const SmoothFunctional<V>& F,
                                    const SamplePath& path,
                                    const PartitionSequence& seq,
                                    const VariationEstimate& variation,
                                    double t) {
  F.validate();
  if (F.p != variation.p)
    throw std::domain_error("ito_follmer_residual: p mismatch");

  V fixed = F.value(t, path.at(t));
  vs_axpy(fixed, -1.0, F.value(0.0, path.at(0.0)));
  V du = trapezoid_du<V>(F.dt, path, variation.limit_grid, t);
  vs_axpy(fixed, -1.0, du);
  double inv_pfact = 1.0;
  for (int k = 2; k <= F.p; ++k) inv_pfact /= static_cast<double>(k);
  V dvar = stieltjes_dvariation<V>(F.dxk.back(), path, variation.limit_grid,
                                   variation.limit_values, t);
  vs_axpy(fixed, -inv_pfact, dvar);

  ResidualReport report;
  report.levels = variation.levels;
  for (int n : variation.levels) {
    V res = fixed;
    vs_axpy(res, -1.0, compensated_sum(F, path, make_partition(seq, n), t));
    report.residuals.push_back(vs_norm(res));
  }
  report.final_residual = report.residuals.back();
  return report;
}

}  // namespace follmer
