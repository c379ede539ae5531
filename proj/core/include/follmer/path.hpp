#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace follmer {

/// A continuous scalar path sampled on the uniform grid of 2^L + 1 points
/// on [0,1]. Off-grid evaluation is linear interpolation; grid points are
/// returned exactly.
struct SamplePath {
  std::vector<double> times;
  std::vector<double> values;
  std::string label;
  std::optional<std::uint64_t> seed;

  int level() const;

  /// Value at t in [0,1]. Grid points exact, otherwise linear interpolation.
  double at(double t) const;

  void validate() const;
};

enum class PartitionKind { Dyadic, Equidistant };

/// A finite partition of [0,1] with endpoints included.
struct Partition {
  std::vector<double> points;
  int level = 0;
};

struct PartitionSequence {
  PartitionKind kind = PartitionKind::Dyadic;
  std::vector<int> levels;
};

/// Dyadic level n: {k 2^-n}; equidistant level n: {k/n}.
Partition make_partition(PartitionKind kind, int n);

inline Partition make_partition(const PartitionSequence& seq, int n) {
  return make_partition(seq.kind, n);
}

/// Max over partition intervals of the oscillation of the path, taking the
/// max/min over grid points inside the interval and the (interpolated)
/// interval endpoints.
double oscillation(const SamplePath& path, const Partition& partition);

}  // namespace follmer
