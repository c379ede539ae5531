#include "follmer/functional.hpp"

#include <cmath>

namespace follmer {

namespace {

double eval_poly(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t d = c.size(); d-- > 0;) acc = acc * x + c[d];
  return acc;
}

std::vector<double> differentiate(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t k = 1; k < c.size(); ++k)
    d.push_back(static_cast<double>(k) * c[k]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

}  // namespace

SmoothFunctional<double> polynomial_functional(std::vector<double> coeffs,
                                               int p) {
  SmoothFunctional<double> f;
  f.p = p;
  f.value = [coeffs](double, double x) { return eval_poly(coeffs, x); };
  f.dt = [](double, double) { return 0.0; };
  std::vector<double> cur = coeffs;
  for (int k = 1; k <= p; ++k) {
    cur = differentiate(cur);
    f.dxk.push_back([cur](double, double x) { return eval_poly(cur, x); });
  }
  f.validate();
  return f;
}

SmoothFunctional<double> monomial_functional(int q, int p) {
  std::vector<double> coeffs(static_cast<std::size_t>(q) + 1, 0.0);
  double fact = 1.0;
  for (int k = 2; k <= q; ++k) fact *= static_cast<double>(k);
  coeffs.back() = 1.0 / fact;
  return polynomial_functional(std::move(coeffs), p);
}

}  // namespace follmer
