#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "ontolab/error.hpp"

namespace ontolab::quadrature {

/// P_n(x) by the three-term recurrence.
inline double legendre(int n, double x) {
  if (n == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

struct Rule {
  std::vector<double> nodes;    // ascending in (-1, 1)
  std::vector<double> weights;  // sum to 2
};

/// n-point Gauss-Legendre rule on [-1, 1] by Newton iteration from the
/// Tricomi initial guesses.
inline Rule gauss_legendre(int n) {
  require(n >= 1, ErrorCode::kInvalidParameter, "Gauss-Legendre needs n >= 1");
  Rule rule{std::vector<double>(static_cast<std::size_t>(n)), std::vector<double>(static_cast<std::size_t>(n))};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      const double p = legendre(n, x);
      const double pm1 = legendre(n - 1, x);
      dp = n * (x * p - pm1) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double pm1 = legendre(n - 1, x);
    dp = n * (x * legendre(n, x) - pm1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

/// Degree-(n-1) reproducing kernel at x = 1, sum_{l<n} (2l+1)/2 P_l(u),
/// evaluated at the nodes of the n-point rule via Christoffel-Darboux:
/// n P_{n-1}(u) / (2 (1 - u)). Paired with the rule it returns the polynomial
/// interpolant of the integrand, evaluated at u = 1.
inline std::vector<double> endpoint_kernel(const Rule& rule) {
  const int n = static_cast<int>(rule.nodes.size());
  std::vector<double> k(rule.nodes.size());
  for (std::size_t a = 0; a < k.size(); ++a) {
    const double u = rule.nodes[a];
    k[a] = n * legendre(n - 1, u) / (2.0 * (1.0 - u));
  }
  return k;
}

}  // namespace ontolab::quadrature
