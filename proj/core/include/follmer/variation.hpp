#pragma once

#include <vector>

#include "follmer/path.hpp"

namespace follmer {

/// Cumulative p-th variation sums along one partition: at each partition
/// point t_j, the sum of |increment|^p over intervals ending at or before
/// t_j. Non-negative, non-decreasing, 0 at t = 0.
struct CumulativeVariation {
  std::vector<double> points;
  std::vector<double> cumulative;

  double total_mass() const { return cumulative.back(); }

  /// Value of the cumulative function at t (step function, counts
  /// intervals with right endpoint <= t).
  double at(double t) const;
};

/// Per-level cumulative variation functions and their empirical limit
/// (the finest level), with convergence diagnostics.
struct VariationEstimate {
  int p = 2;
  std::vector<int> levels;
  std::vector<CumulativeVariation> cumulative;
  std::vector<double> limit_grid;
  std::vector<double> limit_values;
  /// Sup distance of each level's cumulative to the finest level on the
  /// common grid (last entry 0 by construction).
  std::vector<double> gap_to_finest;
  /// Sup distance between consecutive levels (last entry 0).
  std::vector<double> gap_to_next;
};

/// c_p = E|Z|^p for standard normal Z and even p: c_2 = 1,
/// c_p = (p-1) c_{p-2}.
double gaussian_abs_moment(int p);

CumulativeVariation empirical_pth_variation(const SamplePath& path,
                                            const Partition& partition, int p);

VariationEstimate variation_limit(const SamplePath& path,
                                  const PartitionSequence& seq, int p,
                                  const std::vector<int>& levels);

/// Centered finite-difference derivative of the limit on its grid,
/// smoothed over a window of `window` grid cells and clamped below at 0.
std::vector<double> variation_derivative(const VariationEstimate& est,
                                         int window = 32);

/// Builds a VariationEstimate whose limit is exactly the analytic function
/// t -> slope * t on the given dyadic grid level (the theoretical
/// c_p-variation of fBm with H = 1/p).
VariationEstimate theoretical_variation(int p, double slope, int grid_level);

}  // namespace follmer
