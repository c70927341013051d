#pragma once

#include <string>
#include <vector>

#include "mhduq/fem/fe_space.hpp"
#include "mhduq/stochastic/plan.hpp"

namespace mhduq::schemes {

/// Worst projection invariants seen so far (Steps 2 and 4).
struct ProjectionMonitor {
  int checks = 0;
  double max_norm_ratio = 0.0;  ///< max ||v~|| / ||v^||
  double max_div_ratio = 0.0;   ///< max_i |(div v~, zeta_i)| / ||v~||_H1
  /// Slack on the contraction check; roundoff only.
  static constexpr double kNormSlack = 1e-12;
  static constexpr double kDivTolerance = 1e-9;

  /// The contraction ||v~|| <= ||v^|| is guaranteed only for zero normal data; with
  /// data_normal projections it is reported but not asserted.
  bool contraction_asserted = true;

  void record(double norm_ratio, double div_ratio);
  bool contraction_ok() const { return max_norm_ratio <= 1.0 + kNormSlack; }
  bool divergence_ok() const { return max_div_ratio <= kDivTolerance; }
  bool ok() const { return divergence_ok() && (!contraction_asserted || contraction_ok()); }
};

/// Stability margins and per-step monitors of one run.
struct StabilityReport {
  std::vector<double> alpha;  ///< alpha_j
  double alpha_min = 0.0;
  /// 1 / (2 dt alpha_min), the eddy-viscosity threshold with unit constant (infinite if alpha_min <= 0).
  double mu_threshold = 0.0;
  bool mu_threshold_ok = false;
  std::vector<std::string> warnings;

  /// (nu_bar_min + nu_m_bar_min) dt / 2, weight of the gradient terms in the functional.
  double functional_weight = 0.0;
  /// Per step n and realization j: ||v||^2 + ||w||^2 + weight (||grad v||^2 + ||grad w||^2).
  std::vector<std::vector<double>> functional;
  std::vector<std::vector<double>> norm_v_sq, norm_w_sq;
  /// Accumulated 2 gamma dt sum_n (||div v^n||^2 + ||div w^n||^2) per realization.
  std::vector<double> graddiv_dissipation;
  /// Largest relative one-step growth of the functional (negative when strictly decreasing).
  double worst_functional_growth = -1.0;

  ProjectionMonitor projection;

  bool functional_monotone(double tol = 1e-10) const { return worst_functional_growth <= tol; }
};

/// alpha_j = nu_bar_min + nu_m_bar_min - ||nu_j - nu_m,j||_inf - ||nu'_j + nu'_m,j||_inf and the mu check.
/// Warns (never throws) on alpha_j <= 0 or mu below threshold.
StabilityReport stability_params(const stochastic::MaterializedViscosity& fields, double mu, double dt);

/// Appends one level of the stability functional computed from the given fields.
void record_functional(StabilityReport& report, const std::vector<fem::FeFunction>& v,
                       const std::vector<fem::FeFunction>& w, double gamma, double dt, bool accumulate_graddiv);

/// sum_j w^j 1/2 ||u_j|| (L^2 norm, not squared).
double weighted_mean_energy(const std::vector<fem::FeFunction>& u, const stochastic::StochasticPlan& plan);
/// sum_j w^j 1/2 ||u_j||^2
double weighted_mean_kinetic_energy(const std::vector<fem::FeFunction>& u, const stochastic::StochasticPlan& plan);

}  // namespace mhduq::schemes
