#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace follmer {

/// Value-space contract: the scalar case. Other spaces (grid fields)
/// specialize these three hooks.
inline double vs_zero(const double&) { return 0.0; }
inline void vs_axpy(double& acc, double scalar, const double& v) {
  acc += scalar * v;
}
inline double vs_norm(const double& v) { return v < 0 ? -v : v; }

/// A C^{1,p} functional f(t,x) valued in V, with time derivative and the
/// first p space derivatives supplied as closures.
template <class V>
struct SmoothFunctional {
  int p = 2;
  std::function<V(double, double)> value;
  std::function<V(double, double)> dt;
  std::vector<std::function<V(double, double)>> dxk;  // k = 1..p

  void validate() const {
    if (p < 2 || p % 2 != 0)
      throw std::domain_error("functional: p must be even >= 2");
    if (static_cast<int>(dxk.size()) != p)
      throw std::domain_error("functional: dxk must have exactly p entries");
    if (!value || !dt)
      throw std::domain_error("functional: value/dt callables missing");
  }
};

/// Scalar polynomial functional f(x) = sum coeffs[d] x^d, lifted to a
/// SmoothFunctional with analytic derivatives.
SmoothFunctional<double> polynomial_functional(std::vector<double> coeffs,
                                               int p);

/// f(x) = x^q / q! as a SmoothFunctional.
SmoothFunctional<double> monomial_functional(int q, int p);

}  // namespace follmer
