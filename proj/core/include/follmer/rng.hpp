#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace follmer {

/// Deterministic normal generator. std::normal_distribution is
/// implementation-defined, so Box-Muller is rolled by hand to keep
/// streams reproducible across standard libraries.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform_open01();
    double u2 = uniform_open01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  /// Uniform draw on (0,1), never returning 0.
  double uniform_open01() {
    const std::uint64_t z = engine_();
    return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  static constexpr double pi = 3.14159265358979323846;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Per-stream seed derivation for ensembles: mixes a base seed with a
/// stream index (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace follmer
