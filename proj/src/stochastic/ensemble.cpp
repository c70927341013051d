#include "mhduq/stochastic/ensemble.hpp"

#include "mhduq/fem/field_eval.hpp"

namespace mhduq::stochastic {

fem::FeFunction ensemble_mean(const std::vector<fem::FeFunction>& fields) {
  if (fields.empty()) throw std::invalid_argument("ensemble mean of an empty set");
  fem::FeFunction mean(fields.front().space);
  const double inv = 1.0 / static_cast<double>(fields.size());
  for (const auto& f : fields) {
    if (f.space != mean.space) throw std::invalid_argument("ensemble members live on different spaces");
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += f[i];
  }
  for (double& c : mean.coefficients) c *= inv;
  return mean;
}

FieldStats field_stats(const std::vector<fem::FeFunction>& fields, const fem::QuadratureRule& rule) {
  FieldStats stats;
  stats.mean = ensemble_mean(fields);
  const std::size_t np = static_cast<std::size_t>(stats.mean.space->mesh().n_triangles()) * rule.size();
  stats.l_sq.assign(np, 0.0);
  for (const auto& f : fields) {
    fem::FeFunction fl = fem::linear_combination(1.0, f, -1.0, stats.mean);
    if (fields.size() > 1) {
      const auto vals = fem::eval_vector(fl, rule);
      for (std::size_t p = 0; p < np; ++p) stats.l_sq[p] += dot(vals[p], vals[p]);
    }
    stats.fluctuations.push_back(std::move(fl));
  }
  return stats;
}

EnsembleStats ensemble_stats(const std::vector<fem::FeFunction>& v, const std::vector<fem::FeFunction>& w,
                             const fem::QuadratureRule& rule) {
  if (v.size() != w.size()) throw std::invalid_argument("v and w ensembles differ in size");
  return {field_stats(v, rule), field_stats(w, rule)};
}

}  // namespace mhduq::stochastic
