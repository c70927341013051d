#pragma once

#include <utility>
#include <vector>

#include "mhduq/common/types.hpp"

namespace mhduq::stochastic {

/// Truncated Karhunen-Loeve model of a random viscosity/diffusivity pair
///   psi(x, y) = c + (sqrt(pi) l / 2)^(1/2) y_1
///             + sum_{j=1..q} sqrt(xi_j) (sin(j pi x1/2) sin(j pi x2/2) y_2j
///                                      + cos(j pi x1/2) cos(j pi x2/2) y_2j+1),
///   sqrt(xi_j) = (sqrt(pi) l)^(1/2) exp(-(j pi l)^2 / 8),
/// with nu = nu_scale * psi and nu_m = nu_m_scale * psi.
struct KlParameters {
  double c = 1.0;
  double correlation_length = 0.01;
  int q = 2;
  double nu_scale = 2.0 / 15000.0;
  double nu_m_scale = 0.01;
};

class KlField {
 public:
  explicit KlField(KlParameters params);

  const KlParameters& params() const { return params_; }
  /// Number of random inputs, 2q + 1.
  int dimension() const { return 2 * params_.q + 1; }
  double sqrt_xi(int j) const;

  double psi(const Point& x, const std::vector<double>& y) const;
  /// (nu, nu_m) at x; no positivity check.
  std::pair<double, double> viscosity(const Point& x, const std::vector<double>& y) const;

 private:
  KlParameters params_;
};

}  // namespace mhduq::stochastic
