#include "mhduq/schemes/discretization.hpp"

#include <stdexcept>

#include "mhduq/fem/field_eval.hpp"

namespace mhduq::schemes {

Discretization make_discretization(std::shared_ptr<const mesh::TriMesh> mesh, ElementPair pair) {
  Discretization d;
  d.mesh = mesh;
  d.pair = pair;
  d.velocity = std::make_shared<const fem::FeSpace>(mesh, fem::Family::P2, 2);
  const fem::Family pf = pair == ElementPair::taylor_hood ? fem::Family::P1 : fem::Family::P1disc;
  d.pressure = std::make_shared<const fem::FeSpace>(mesh, pf, 1, true);
  d.momentum = std::make_shared<const fem::MomentumAssembler>(d.velocity);
  d.div = fem::assemble_operator(fem::Divergence{}, *d.velocity, *d.pressure);
  d.div_t = d.div.transpose();
  d.mass = fem::assemble_operator(fem::Mass{}, *d.velocity, *d.velocity);
  d.points = fem::quadrature_points(*mesh, d.rule());
  return d;
}

linalg::SparseMatrix saddle_matrix(const Discretization& d, const linalg::SparseMatrix& a,
                                   const std::vector<int>& velocity_rows, bool pin_pressure) {
  linalg::SparseMatrix k = linalg::block_matrix({{{&a, 1.0}, {&d.div_t, -1.0}}, {{&d.div, 1.0}, {nullptr, 1.0}}},
                                                {d.nv(), d.np()}, {d.nv(), d.np()});
  fem::constrain_rows(k, velocity_rows);
  if (pin_pressure) fem::constrain_rows(k, {0}, d.nv());
  return k;
}

std::vector<double> momentum_rhs(const Discretization& d, const MomentumRhsInput& in, double t, double dt) {
  const auto& rule = d.rule();
  const std::vector<Vec2> prev = fem::eval_vector(*in.previous, rule);
  std::vector<Vec2> lag_val;
  std::vector<Mat2> lag_grad;
  fem::eval_vector_and_gradient(*in.lagged, rule, lag_val, lag_grad);
  const std::vector<Mat2> other_grad = fem::eval_gradient(*in.lagged_other, rule);
  const std::vector<Vec2> wind = fem::eval_vector(*in.wind_fluct, rule);
  const bool forced = in.forcing && *in.forcing;

  const std::size_t n = d.points.size();
  std::vector<Vec2> f(n);
  std::vector<Mat2> big_f(n);
  const double inv_dt = 1.0 / dt;
  for (std::size_t i = 0; i < n; ++i) {
    const Mat2& g = lag_grad[i];
    const Vec2 adv{wind[i][0] * g[0][0] + wind[i][1] * g[0][1], wind[i][0] * g[1][0] + wind[i][1] * g[1][1]};
    f[i] = inv_dt * prev[i] - adv;
    if (forced) f[i] = f[i] + (*in.forcing)(t, d.points[i]);
    const double hd = (*in.half_diff)[i], hf = (*in.half_fluct)[i];
    for (int c = 0; c < 2; ++c)
      for (int e = 0; e < 2; ++e) big_f[i][c][e] = -hd * other_grad[i][c][e] - hf * g[c][e];
  }
  return fem::assemble_linear_form(*d.velocity, rule, f, &big_f);
}

ViscosityData make_viscosity_data(const stochastic::StochasticPlan& plan, const Discretization& d) {
  ViscosityData v;
  v.fields = stochastic::materialize_viscosity(plan, *d.mesh, d.rule());
  const auto& m = v.fields;
  const std::size_t n = m.nu_bar.size();
  v.mean_half.resize(n);
  for (std::size_t i = 0; i < n; ++i) v.mean_half[i] = 0.5 * (m.nu_bar[i] + m.nu_m_bar[i]);
  for (int j = 0; j < plan.size(); ++j) {
    std::vector<double> hd(n), hf(n);
    for (std::size_t i = 0; i < n; ++i) {
      hd[i] = 0.5 * (m.nu[j][i] - m.nu_m[j][i]);
      hf[i] = 0.5 * (m.nu_prime[j][i] + m.nu_m_prime[j][i]);
    }
    v.half_diff.push_back(std::move(hd));
    v.half_fluct.push_back(std::move(hf));
  }
  return v;
}

std::vector<double> momentum_kappa(const ViscosityData& visc, const std::vector<double>& l_sq, double mu, double dt) {
  if (l_sq.size() != visc.mean_half.size()) throw std::invalid_argument("mixing length samples do not match the rule");
  std::vector<double> k(l_sq.size());
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = visc.mean_half[i] + 2.0 * mu * dt * l_sq[i];
  return k;
}

// ============================================================================
// SubproblemSolver
// ============================================================================

SubproblemSolver::SubproblemSolver(linalg::SparseMatrix a, const SolverSettings& settings, bool allow_iterative)
    : a_(std::move(a)), settings_(settings) {
  if (!(allow_iterative && settings_.kind == SolverKind::iterative)) factor_ = linalg::factorize(a_);
}

std::vector<std::vector<double>> SubproblemSolver::solve(const std::vector<std::vector<double>>& rhs) const {
  if (factor_) return factor_->solve_multi(rhs);
  return linalg::solve_iterative(a_, rhs, settings_.iterative).solutions;
}

}  // namespace mhduq::schemes
