#pragma once

#include <functional>
#include <vector>

#include "follmer/spectral.hpp"

namespace follmer {

struct FlowResult {
  GridField field;
  double clipped_mass = 0.0;  // L2 mass taken as 0 outside the box
  bool edge_warning = false;  // input mass near the domain boundary
};

/// Cubic (Catmull-Rom) interpolation of a field at an arbitrary point;
/// zero outside the box.
std::complex<double> interpolate_field(const GridField& field, double x);

/// The group generated by g d/dx for 0 < c1 <= g <= c2: translation along
/// the flow of xdot = g(x), realized through h(x) = int 1/g and its
/// inverse. Immutable once built.
class FlowShiftGroup {
 public:
  FlowShiftGroup(GridPtr grid, std::vector<double> g_samples);

  double c1() const { return c1_; }
  double c2() const { return c2_; }
  const std::vector<double>& g_samples() const { return g_; }
  const GridPtr& grid() const { return grid_; }

  /// h(x) with h(-L_dom) = 0; piecewise cubic Hermite with exact slope 1/g.
  double h(double x) const;
  /// Inverse of h; returns false when y leaves the truncated range.
  bool h_inverse(double y, double& x) const;

  /// [G(t)f](x) = f(h^{-1}(h(x) + t)), resampled by cubic interpolation.
  FlowResult apply(double t, const GridField& field) const;

  /// exp(-s (g d)^4) f for s >= 0, via conjugation by the flow
  /// substitution: resample to flow coordinates, apply exp(-s d^4)
  /// spectrally there, resample back.
  GridField quartic_decay(double s, const GridField& field) const;

  /// Total h-range (length of the flow-coordinate box).
  double h_span() const { return h_table_.back(); }

 private:
  GridPtr grid_;
  std::vector<double> g_;
  std::vector<double> h_table_;  // h at grid nodes, h_table_[0] = 0
  double c1_ = 0.0, c2_ = 0.0;
  GridPtr flow_grid_;  // spectral grid in flow coordinates
};

}  // namespace follmer
