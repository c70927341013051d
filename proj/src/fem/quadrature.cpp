#include "mhduq/fem/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mhduq::fem {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre needs n >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * k - 1.0) * z * p2 - (k - 1.0) * p3) / k;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    nodes[i] = -z;
    nodes[n - 1 - i] = z;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

QuadratureRule collapsed_gauss_rule(int n) {
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  QuadratureRule rule;
  rule.degree = 2 * n - 2;
  for (int i = 0; i < n; ++i) {
    const double u = 0.5 * (x[i] + 1.0);
    for (int j = 0; j < n; ++j) {
      const double v = 0.5 * (x[j] + 1.0);
      const double xi = u;
      const double eta = v * (1.0 - u);
      rule.points.push_back({1.0 - xi - eta, xi, eta});
      rule.weights.push_back(0.25 * w[i] * w[j] * (1.0 - u));
    }
  }
  return rule;
}

QuadratureRule triangle_rule(int degree) {
  QuadratureRule rule;
  if (degree <= 1) {
    rule.degree = 1;
    rule.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
    rule.weights = {0.5};
    return rule;
  }
  if (degree == 2) {
    rule.degree = 2;
    const double a = 2.0 / 3.0, b = 1.0 / 6.0;
    rule.points = {{a, b, b}, {b, a, b}, {b, b, a}};
    rule.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
    return rule;
  }
  if (degree <= 5) {
    // Radon's 7-point rule.
    rule.degree = 5;
    const double s15 = std::sqrt(15.0);
    const double a1 = (6.0 - s15) / 21.0, b1 = 1.0 - 2.0 * a1;
    const double a2 = (6.0 + s15) / 21.0, b2 = 1.0 - 2.0 * a2;
    const double w0 = 9.0 / 80.0;
    const double w1 = (155.0 - s15) / 2400.0;
    const double w2 = (155.0 + s15) / 2400.0;
    rule.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
                   {b1, a1, a1}, {a1, b1, a1}, {a1, a1, b1},
                   {b2, a2, a2}, {a2, b2, a2}, {a2, a2, b2}};
    rule.weights = {w0, w1, w1, w1, w2, w2, w2};
    return rule;
  }
  return collapsed_gauss_rule((degree + 3) / 2);
}

}  // namespace mhduq::fem
