#include "follmer/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace follmer {

std::string format_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void atomic_write_text(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

void write_path_csv(const SamplePath& path, const std::string& file) {
  std::ostringstream out;
  out << "t,value\n";
  for (std::size_t i = 0; i < path.times.size(); ++i)
    out << format_full(path.times[i]) << ',' << format_full(path.values[i])
        << '\n';
  atomic_write_text(file, out.str());
}

void write_variation_csvs(const VariationEstimate& est,
                          const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  for (std::size_t li = 0; li < est.levels.size(); ++li) {
    std::ostringstream out;
    out << "t,cumulative\n";
    const auto& cum = est.cumulative[li];
    for (std::size_t i = 0; i < cum.points.size(); ++i)
      out << format_full(cum.points[i]) << ','
          << format_full(cum.cumulative[i]) << '\n';
    atomic_write_text(
        dir + "/level_" + std::to_string(est.levels[li]) + ".csv", out.str());
  }
  {
    std::ostringstream out;
    out << "t,limit\n";
    for (std::size_t i = 0; i < est.limit_grid.size(); ++i)
      out << format_full(est.limit_grid[i]) << ','
          << format_full(est.limit_values[i]) << '\n';
    atomic_write_text(dir + "/limit.csv", out.str());
  }
  {
    std::ostringstream out;
    out << "level,gap_to_finest,gap_to_next\n";
    for (std::size_t li = 0; li < est.levels.size(); ++li)
      out << est.levels[li] << ',' << format_full(est.gap_to_finest[li]) << ','
          << format_full(est.gap_to_next[li]) << '\n';
    atomic_write_text(dir + "/diagnostics.csv", out.str());
  }
}

void write_field_csv(const GridField& field, const std::string& file) {
  std::ostringstream out;
  out << "x,re,im\n";
  for (std::size_t i = 0; i < field.grid->N; ++i)
    out << format_full(field.grid->x(i)) << ','
        << format_full(field.samples[i].real()) << ','
        << format_full(field.samples[i].imag()) << '\n';
  atomic_write_text(file, out.str());
}

void write_scalar_trajectory_csv(const ScalarTrajectory& traj,
                                 const std::string& file) {
  std::ostringstream out;
  out << "t,value\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    out << format_full(traj.times[i]) << ',' << format_full(traj.values[i])
        << '\n';
  atomic_write_text(file, out.str());
}

void write_field_trajectory_csvs(const FieldTrajectory& traj,
                                 const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ostringstream norms;
  norms << "t,l2_norm\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    norms << format_full(traj.times[i]) << ',' << format_full(traj.norms[i])
          << '\n';
    write_field_csv(traj.states[i], dir + "/state_" + std::to_string(i) + ".csv");
  }
  atomic_write_text(dir + "/norms.csv", norms.str());
}

}  // namespace follmer
