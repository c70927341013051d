#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mhduq/fem/field_eval.hpp"
#include "mhduq/fem/norms.hpp"
#include "mhduq/linalg/factorization.hpp"
#include "mhduq/schemes/steppers.hpp"
#include "mhduq/stochastic/ensemble.hpp"

namespace mhduq::schemes {

SppStepper::SppStepper(std::shared_ptr<const Discretization> disc, const SchemeConfig& config, const Problem& problem,
                       std::shared_ptr<const ViscosityData> visc)
    : StepperBase(std::move(disc), config, problem, std::move(visc)) {
  const Discretization& d = *disc_;
  normal_dofs_ = fem::normal_component_dofs(*d.velocity, problem_.normal_tag);
  pin_projection_ = problem_.normal_covers_boundary();
  linalg::SparseMatrix m = d.mass;
  m.scale(1.0 / config_.dt);
  projection_ = std::make_unique<linalg::Factorization>(saddle_matrix(d, m, normal_dofs_, pin_projection_));
  counters_.projection_factorizations = 1;
  monitor_.contraction_asserted = config_.projection_boundary == ProjectionBoundary::zero_normal;
}

EnsembleState SppStepper::initial_state() const {
  EnsembleState s;
  for (const auto& r : problem_.realizations) {
    s.v_hat.push_back(fem::interpolate(r.v0, 0.0, disc_->velocity));
    s.w_hat.push_back(fem::interpolate(r.w0, 0.0, disc_->velocity));
    s.v_tilde.push_back(s.v_hat.back());
    s.w_tilde.push_back(s.w_hat.back());
    s.q_hat.emplace_back(disc_->pressure);
    s.r_hat.emplace_back(disc_->pressure);
  }
  return s;
}

linalg::SparseMatrix SppStepper::momentum_matrix(const EnsembleState& state, int which) const {
  return momentum_from_stats(stochastic::ensemble_stats(state.v_hat, state.w_hat, disc_->rule()), which);
}

linalg::SparseMatrix SppStepper::momentum_from_stats(const stochastic::EnsembleStats& stats, int which) const {
  const Discretization& d = *disc_;
  const auto& other = which == 0 ? stats.w : stats.v;
  const std::vector<double> kappa = momentum_kappa(*visc_, other.l_sq, config_.mu, config_.dt);
  const std::vector<Vec2> wind = fem::eval_vector(other.mean, d.rule());
  fem::MomentumTerms terms;
  terms.mass = 1.0 / config_.dt;
  terms.diffusion_field = &kappa;
  terms.wind = &wind;
  terms.graddiv = config_.gamma;
  linalg::SparseMatrix a = d.momentum->assemble(terms);
  fem::constrain_rows(a, dirichlet_dofs_);
  return a;
}

void SppStepper::project(const std::vector<fem::FeFunction>& hat, std::vector<fem::FeFunction>& tilde,
                         std::vector<fem::FeFunction>& pressure) {
  const Discretization& d = *disc_;
  const int nj = static_cast<int>(hat.size());
  const double inv_dt = 1.0 / config_.dt;
  std::vector<std::vector<double>> rhs(nj);
  for (int j = 0; j < nj; ++j) {
    rhs[j] = d.mass * hat[j].coefficients;
    for (double& x : rhs[j]) x *= inv_dt;
    if (config_.projection_boundary == ProjectionBoundary::zero_normal)
      fem::zero_entries(rhs[j], normal_dofs_);
    else
      for (int i : normal_dofs_) rhs[j][i] = hat[j][i];
    rhs[j].resize(d.nv() + d.np(), 0.0);
  }
  const auto sol = projection_->solve_multi(rhs);
  counters_.solves += nj;
  tilde.clear();
  pressure.clear();
  for (int j = 0; j < nj; ++j) {
    fem::FeFunction v(d.velocity, std::vector<double>(sol[j].begin(), sol[j].begin() + d.nv()));
    fem::FeFunction p(d.pressure, std::vector<double>(sol[j].begin() + d.nv(), sol[j].end()));
    fem::remove_mean(p);
    if (config_.monitor_projection) {
      const double hat_sq = linalg::dot(hat[j].coefficients, d.mass * hat[j].coefficients);
      const double tilde_sq = linalg::dot(v.coefficients, d.mass * v.coefficients);
      const double ratio = hat_sq > 0.0 ? std::sqrt(tilde_sq / hat_sq) : (tilde_sq > 0.0 ? INFINITY : 0.0);
      const std::vector<double> div = d.div * v.coefficients;
      double div_max = 0.0;
      for (double x : div) div_max = std::max(div_max, std::abs(x));
      const double h1 = fem::h1_norm(v);
      monitor_.record(ratio, h1 > 0.0 ? div_max / h1 : div_max);
    }
    tilde.push_back(std::move(v));
    pressure.push_back(std::move(p));
  }
}

void SppStepper::step(EnsembleState& state) {
  const Discretization& d = *disc_;
  const int nj = state.size();
  const double dt = config_.dt;
  const double t_next = (state.n + 1) * dt;
  const auto stats = stochastic::ensemble_stats(state.v_hat, state.w_hat, d.rule());

  // Steps 1 and 3 use level-n statistics only; Steps 2 and 4 project their results.
  std::vector<fem::FeFunction> new_hat[2];
  for (int which = 0; which < 2; ++which) {
    const auto& other = which == 0 ? stats.w : stats.v;
    const auto& prev = which == 0 ? state.v_tilde : state.w_tilde;
    const auto& z = which == 0 ? state.v_hat : state.w_hat;
    const auto& zo = which == 0 ? state.w_hat : state.v_hat;
    const auto& bcs = which == 0 ? bc_v_ : bc_w_;

    const long before = linalg::Factorization::numeric_count();
    SubproblemSolver solver(momentum_from_stats(stats, which), config_.solver, true);
    ++counters_.momentum_assemblies;

    std::vector<std::vector<double>> rhs(nj);
    for (int j = 0; j < nj; ++j) {
      MomentumRhsInput in;
      in.previous = &prev[j];
      in.lagged = &z[j];
      in.lagged_other = &zo[j];
      in.wind_fluct = &other.fluctuations[j];
      in.half_diff = &visc_->half_diff[j];
      in.half_fluct = &visc_->half_fluct[j];
      in.forcing = which == 0 ? &problem_.realizations[j].f1 : &problem_.realizations[j].f2;
      rhs[j] = momentum_rhs(d, in, t_next, dt);
      bcs[j].apply(rhs[j], t_next);
    }
    const auto sol = solver.solve(rhs);
    counters_.solves += nj;
    count_factorization(static_cast<int>(linalg::Factorization::numeric_count() - before));
    for (int j = 0; j < nj; ++j) new_hat[which].emplace_back(d.velocity, sol[j]);
    check_finite(new_hat[which], state.n + 1, which == 0 ? "v^" : "w^");
  }

  state.v_hat = std::move(new_hat[0]);
  state.w_hat = std::move(new_hat[1]);
  project(state.v_hat, state.v_tilde, state.q_hat);
  project(state.w_hat, state.w_tilde, state.r_hat);
  ++state.n;
  state.t = t_next;
  ++counters_.steps;
}

}  // namespace mhduq::schemes
