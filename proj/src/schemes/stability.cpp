#include "mhduq/schemes/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mhduq/fem/norms.hpp"

namespace mhduq::schemes {

void ProjectionMonitor::record(double norm_ratio, double div_ratio) {
  ++checks;
  max_norm_ratio = std::max(max_norm_ratio, norm_ratio);
  max_div_ratio = std::max(max_div_ratio, div_ratio);
}

StabilityReport stability_params(const stochastic::MaterializedViscosity& m, double mu, double dt) {
  StabilityReport r;
  const std::size_t n_real = m.nu.size();
  const double base = m.nu_bar_min + m.nu_m_bar_min;
  r.alpha_min = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n_real; ++j) {
    double diff = 0.0, fluct = 0.0;
    for (std::size_t i = 0; i < m.nu[j].size(); ++i) {
      diff = std::max(diff, std::abs(m.nu[j][i] - m.nu_m[j][i]));
      fluct = std::max(fluct, std::abs(m.nu_prime[j][i] + m.nu_m_prime[j][i]));
    }
    const double a = base - diff - fluct;
    r.alpha.push_back(a);
    r.alpha_min = std::min(r.alpha_min, a);
    if (a <= 0.0) r.warnings.push_back("alpha_" + std::to_string(j + 1) + " = " + std::to_string(a) + " is not positive");
  }
  if (r.alpha_min > 0.0) {
    r.mu_threshold = 1.0 / (2.0 * dt * r.alpha_min);
    r.mu_threshold_ok = mu > r.mu_threshold;
    if (!r.mu_threshold_ok)
      r.warnings.push_back("mu = " + std::to_string(mu) + " is below the threshold " + std::to_string(r.mu_threshold));
  } else {
    r.mu_threshold = std::numeric_limits<double>::infinity();
    r.mu_threshold_ok = false;
  }
  r.functional_weight = 0.5 * base * dt;
  r.graddiv_dissipation.assign(n_real, 0.0);
  return r;
}

void record_functional(StabilityReport& report, const std::vector<fem::FeFunction>& v,
                       const std::vector<fem::FeFunction>& w, double gamma, double dt, bool accumulate_graddiv) {
  if (v.size() != w.size()) throw std::invalid_argument("ensemble sizes differ");
  if (report.graddiv_dissipation.size() != v.size()) report.graddiv_dissipation.assign(v.size(), 0.0);
  std::vector<double> level(v.size()), nv(v.size()), nw(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double lv = fem::l2_norm(v[j]), lw = fem::l2_norm(w[j]);
    const double gv = fem::h1_seminorm(v[j]), gw = fem::h1_seminorm(w[j]);
    nv[j] = lv * lv;
    nw[j] = lw * lw;
    level[j] = nv[j] + nw[j] + report.functional_weight * (gv * gv + gw * gw);
    if (accumulate_graddiv) {
      const double dv = fem::div_l2_norm(v[j]), dw = fem::div_l2_norm(w[j]);
      report.graddiv_dissipation[j] += 2.0 * gamma * dt * (dv * dv + dw * dw);
    }
  }
  if (!report.functional.empty()) {
    const auto& prev = report.functional.back();
    for (std::size_t j = 0; j < v.size(); ++j) {
      const double growth = prev[j] > 0.0 ? (level[j] - prev[j]) / prev[j] : (level[j] > 0.0 ? 1.0 : 0.0);
      report.worst_functional_growth = std::max(report.worst_functional_growth, growth);
    }
  }
  report.functional.push_back(std::move(level));
  report.norm_v_sq.push_back(std::move(nv));
  report.norm_w_sq.push_back(std::move(nw));
}

double weighted_mean_energy(const std::vector<fem::FeFunction>& u, const stochastic::StochasticPlan& plan) {
  if (static_cast<int>(u.size()) != plan.size()) throw std::invalid_argument("field count does not match the plan");
  std::vector<double> e(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) e[j] = 0.5 * fem::l2_norm(u[j]);
  return stochastic::qoi_expectation(e, plan);
}

double weighted_mean_kinetic_energy(const std::vector<fem::FeFunction>& u, const stochastic::StochasticPlan& plan) {
  if (static_cast<int>(u.size()) != plan.size()) throw std::invalid_argument("field count does not match the plan");
  std::vector<double> e(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double l = fem::l2_norm(u[j]);
    e[j] = 0.5 * l * l;
  }
  return stochastic::qoi_expectation(e, plan);
}

}  // namespace mhduq::schemes
