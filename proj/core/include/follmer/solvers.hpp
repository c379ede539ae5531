#pragma once

#include <functional>
#include <vector>

#include "follmer/flow.hpp"
#include "follmer/integral.hpp"
#include "follmer/spectral.hpp"
#include "follmer/variation.hpp"

namespace follmer {

/// Linear interpolation of the variation limit at t.
double variation_value_at(const VariationEstimate& est, double t);

/// Value of a derivative estimate (from variation_derivative) at t.
double derivative_value_at(const VariationEstimate& est,
                           const std::vector<double>& deriv, double t);

double median(std::vector<double> values);

struct ScalarTrajectory {
  std::vector<double> times;
  std::vector<double> values;
};

struct FieldTrajectory {
  std::vector<double> times;
  std::vector<GridField> states;
  std::vector<double> norms;
  double clipped_mass = 0.0;
  bool edge_warning = false;
};

/// Y(t) = exp{ b w_t + a t - (1/p!) b^p [w]_p(t) } with the variation
/// function taken from the estimate (substitute theoretical_variation for
/// the closed-form solution).
ScalarTrajectory solve_scalar_geometric(double a, double b, int p,
                                        const SamplePath& path,
                                        const VariationEstimate& variation,
                                        const std::vector<double>& times);

enum class NoiseKind { ScalarId, Shift };

/// Commutative bilinear problem: A a Fourier multiplier, noise either
/// b Id or the shift group of b d/dx.
struct CommutativeProblem {
  GridPtr grid;
  std::function<std::complex<double>(double)> a_symbol;
  NoiseKind noise = NoiseKind::ScalarId;
  double b = 1.0;
  int p = 2;
  GridField x0;
};

/// X(t) = G_B(w_t - w_0) exp(t C) x0 with
/// C = A - (1/p!) vdot B^p, vdot the median of the empirical variation
/// derivative. Rejects C whose symbol grows at high frequency.
FieldTrajectory solve_commutative(const CommutativeProblem& prob,
                                  const SamplePath& path,
                                  const VariationEstimate& variation,
                                  const std::vector<double>& times);

/// dX = a_diff X'' dt + g X' d^pi w with p = 4.
struct ParabolicProblem {
  GridPtr grid;
  std::vector<double> g_samples;
  double a_diff = 1.0;
  GridField x0;
  double dt = 1e-2;
  /// Smoothing window (limit-grid cells) for the variation derivative
  /// entering C(t).
  int vdot_window = 32;
};

/// Exponential-Euler stepping of the conjugated family: each step is
/// G_B(dw) exp(dt C(t_n)) with exp(dt C) split into the heat factor and
/// the flow-conjugated quartic decay factor.
class EvolutionSystem {
 public:
  EvolutionSystem(const ParabolicProblem& prob, const SamplePath& path,
                  const VariationEstimate& variation);

  /// One step over [t, t + h].
  GridField step(double t, double h, const GridField& x) const;

  /// Steps from r to t with equal sub-steps of size at most dt.
  GridField propagate(double r, double t, const GridField& x) const;

  FieldTrajectory solve(const std::vector<double>& times) const;

  const FlowShiftGroup& noise_group() const { return flow_; }

  /// The variation-derivative function t -> [w]'_4(t) used in C(t).
  double vdot_at(double t) const;

 private:
  const ParabolicProblem& prob_;
  const SamplePath& path_;
  FlowShiftGroup flow_;
  VariationEstimate variation_;
  std::vector<double> vdot_;
  bool constant_g_ = false;  // plain translation: exact spectral factors
  double g0_ = 0.0;
};

/// dX = [1/8 d^4 + i(d^4 + d^2 - g)] X dt + X' d^pi w with p = 4,
/// [w]_4 = 3t. The drift's 1/8 d^4 cancels (3/4!) d^4 exactly, leaving the
/// unitary evolution exp(t i(d^4 + d^2 - g)).
struct HyperbolicProblem {
  GridPtr grid;
  std::vector<double> g_samples;
  GridField x0;
  double dt = 1e-3;
};

FieldTrajectory solve_hyperbolic(const HyperbolicProblem& prob,
                                 const SamplePath& path,
                                 const std::vector<double>& times);

/// Max |Re| over the grid of the assembled hyperbolic C symbol
/// (1/8) xi^4 + i(xi^4 - xi^2) - (3/24) xi^4; zero when the cancellation
/// is exact.
double hyperbolic_symbol_max_abs_re(const SpectralGrid& grid);

/// Relative residual of the integral equation
/// X_t = x0 + int A X dr + int B X d^pi w per partition level, for the
/// scalar geometric solution.
ResidualReport verify_scalar_geometric(double a, double b, int p,
                                       const SamplePath& path,
                                       const VariationEstimate& variation,
                                       const PartitionSequence& seq,
                                       const std::vector<int>& levels,
                                       double t);

/// Same residual check for commutative field problems.
ResidualReport verify_commutative(const CommutativeProblem& prob,
                                  const SamplePath& path,
                                  const VariationEstimate& variation,
                                  const PartitionSequence& seq,
                                  const std::vector<int>& levels, double t);

}  // namespace follmer
