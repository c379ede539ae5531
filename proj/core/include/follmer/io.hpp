#pragma once

#include <string>

#include "follmer/path.hpp"
#include "follmer/solvers.hpp"
#include "follmer/spectral.hpp"
#include "follmer/variation.hpp"

namespace follmer {

/// %.17g formatting (round-trip exact for doubles).
std::string format_full(double v);

/// Write `content` to `path` atomically (temp file + rename).
void atomic_write_text(const std::string& path, const std::string& content);

/// `t,value` rows, full precision.
void write_path_csv(const SamplePath& path, const std::string& file);

/// Per-level cumulative CSVs (`level_<n>.csv`: t,cumulative), the limit
/// function (`limit.csv`) and `diagnostics.csv`
/// (level,gap_to_finest,gap_to_next) under `dir`.
void write_variation_csvs(const VariationEstimate& est, const std::string& dir);

/// `x,re,im` rows.
void write_field_csv(const GridField& field, const std::string& file);

/// `t,value` rows for a scalar trajectory.
void write_scalar_trajectory_csv(const ScalarTrajectory& traj,
                                 const std::string& file);

/// One field CSV per output time (`state_<i>.csv`) plus `norms.csv`.
void write_field_trajectory_csvs(const FieldTrajectory& traj,
                                 const std::string& dir);

}  // namespace follmer
