#include "follmer/path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace follmer {

int SamplePath::level() const {
  const std::size_t n = times.size() - 1;
  int l = 0;
  while ((std::size_t{1} << l) < n) ++l;
  return l;
}

double SamplePath::at(double t) const {
  if (t <= times.front()) return values.front();
  if (t >= times.back()) return values.back();
  const std::size_t n = times.size() - 1;
  // Uniform grid: locate directly.
  const double pos = t * static_cast<double>(n);
  std::size_t i = static_cast<std::size_t>(pos);
  if (i >= n) i = n - 1;
  const double ti = times[i];
  const double tj = times[i + 1];
  if (t == ti) return values[i];
  if (t == tj) return values[i + 1];
  const double w = (t - ti) / (tj - ti);
  return values[i] + w * (values[i + 1] - values[i]);
}

void SamplePath::validate() const {
  if (times.size() < 2 || times.size() != values.size())
    throw std::invalid_argument("path: times/values size mismatch");
  if (times.front() != 0.0 || times.back() != 1.0)
    throw std::invalid_argument("path: grid must span [0,1]");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("path: times not strictly increasing");
}

Partition make_partition(PartitionKind kind, int n) {
  if (n < 0) throw std::invalid_argument("partition level must be >= 0");
  Partition p;
  p.level = n;
  if (kind == PartitionKind::Dyadic) {
    const std::size_t count = std::size_t{1} << n;
    p.points.resize(count + 1);
    for (std::size_t k = 0; k <= count; ++k)
      p.points[k] = static_cast<double>(k) / static_cast<double>(count);
  } else {
    if (n < 1) throw std::invalid_argument("equidistant level must be >= 1");
    p.points.resize(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
      p.points[static_cast<std::size_t>(k)] =
          static_cast<double>(k) / static_cast<double>(n);
  }
  p.points.front() = 0.0;
  p.points.back() = 1.0;
  return p;
}

double oscillation(const SamplePath& path, const Partition& partition) {
  const std::size_t n = path.times.size() - 1;
  double worst = 0.0;
  for (std::size_t j = 0; j + 1 < partition.points.size(); ++j) {
    const double a = partition.points[j];
    const double b = partition.points[j + 1];
    double lo = std::min(path.at(a), path.at(b));
    double hi = std::max(path.at(a), path.at(b));
    // Grid points strictly inside (a, b).
    std::size_t i = static_cast<std::size_t>(std::ceil(a * n));
    for (; i <= n && path.times[i] < b; ++i) {
      if (path.times[i] <= a) continue;
      lo = std::min(lo, path.values[i]);
      hi = std::max(hi, path.values[i]);
    }
    worst = std::max(worst, hi - lo);
  }
  return worst;
}

}  // namespace follmer
