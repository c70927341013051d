#pragma once

#include <vector>

#include "mhduq/fem/fe_space.hpp"
#include "mhduq/fem/quadrature.hpp"

namespace mhduq::stochastic {

/// Equal-weight ensemble mean, fluctuations z'_j = z_j - <z>, and the squared
/// mixing length l^2 = sum_j |z'_j|^2 sampled at the points of a rule.
struct FieldStats {
  fem::FeFunction mean;
  std::vector<fem::FeFunction> fluctuations;
  std::vector<double> l_sq;
};

FieldStats field_stats(const std::vector<fem::FeFunction>& fields, const fem::QuadratureRule& rule);

/// Statistics of both Elsasser ensembles at one time level.
struct EnsembleStats {
  FieldStats v;
  FieldStats w;
};

EnsembleStats ensemble_stats(const std::vector<fem::FeFunction>& v, const std::vector<fem::FeFunction>& w,
                             const fem::QuadratureRule& rule);

fem::FeFunction ensemble_mean(const std::vector<fem::FeFunction>& fields);

}  // namespace mhduq::stochastic
