#pragma once

#include <array>
#include <vector>

namespace mhduq::fem {

/// Quadrature on the reference triangle {(xi, eta): xi, eta >= 0, xi + eta <= 1}.
/// Points are barycentric (lambda0, lambda1, lambda2) with xi = lambda1,
/// eta = lambda2; weights sum to the reference area 1/2.
struct QuadratureRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
  int degree = 0;

  int size() const { return static_cast<int>(weights.size()); }
};

/// Smallest built-in rule exact for polynomials up to `degree`. Degrees 1, 2
/// and 5 use the centroid, 3-point and 7-point rules; higher degrees fall back
/// to a collapsed Gauss-Legendre product rule.
QuadratureRule triangle_rule(int degree);

/// Collapsed (Duffy) Gauss-Legendre product rule with n points per direction,
/// exact to degree 2n-2.
QuadratureRule collapsed_gauss_rule(int n);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Default rule for all P2 forms with coefficients.
inline constexpr int kAssemblyDegree = 5;
/// Rule degree used when measuring errors against analytic fields.
inline constexpr int kErrorDegree = 10;

}  // namespace mhduq::fem
