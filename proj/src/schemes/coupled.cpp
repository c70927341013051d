#include <algorithm>
#include <stdexcept>
#include <string>

#include "mhduq/fem/field_eval.hpp"
#include "mhduq/fem/norms.hpp"
#include "mhduq/linalg/factorization.hpp"
#include "mhduq/schemes/steppers.hpp"
#include "mhduq/stochastic/ensemble.hpp"

namespace mhduq::schemes {

int EnsembleState::size() const { return static_cast<int>(!v_hat.empty() ? v_hat.size() : v.size()); }

const std::vector<fem::FeFunction>& primary_v(const EnsembleState& s, Algorithm a) {
  return a == Algorithm::spp ? s.v_hat : s.v;
}

const std::vector<fem::FeFunction>& primary_w(const EnsembleState& s, Algorithm a) {
  return a == Algorithm::spp ? s.w_hat : s.w;
}

// ============================================================================
// StepperBase
// ============================================================================

StepperBase::StepperBase(std::shared_ptr<const Discretization> disc, const SchemeConfig& config,
                         const Problem& problem, std::shared_ptr<const ViscosityData> visc)
    : disc_(std::move(disc)), config_(config), problem_(problem), visc_(std::move(visc)) {
  config_.validate();
  if (disc_->mesh != problem_.mesh) throw std::invalid_argument("problem and discretization use different meshes");
  if (static_cast<int>(visc_->half_diff.size()) != problem_.size())
    throw std::invalid_argument("viscosity data and problem have different realization counts");
  for (const auto& r : problem_.realizations) {
    bc_v_.emplace_back(disc_->velocity, std::vector<fem::DirichletCondition>{{problem_.dirichlet_tag, r.v_bc}});
    bc_w_.emplace_back(disc_->velocity, std::vector<fem::DirichletCondition>{{problem_.dirichlet_tag, r.w_bc}});
  }
  dirichlet_dofs_ = bc_v_.front().dofs();
  pin_saddle_ = problem_.dirichlet_tag == mesh::BoundaryTag::all;
}

void StepperBase::check_finite(const std::vector<fem::FeFunction>& fields, int step, const char* what) {
  for (std::size_t j = 0; j < fields.size(); ++j)
    if (!fem::all_finite(fields[j]))
      throw SolutionBlowup(std::string("non-finite ") + what + " at step " + std::to_string(step) + ", realization " +
                               std::to_string(j + 1),
                           step, static_cast<int>(j));
}

void StepperBase::count_factorization(int per_step) {
  counters_.momentum_factorizations += per_step;
  counters_.max_factorizations_per_subproblem_step = std::max(counters_.max_factorizations_per_subproblem_step, per_step);
}

// ============================================================================
// CoupledStepper
// ============================================================================

EnsembleState CoupledStepper::initial_state() const {
  EnsembleState s;
  for (const auto& r : problem_.realizations) {
    s.v.push_back(fem::interpolate(r.v0, 0.0, disc_->velocity));
    s.w.push_back(fem::interpolate(r.w0, 0.0, disc_->velocity));
    s.q.emplace_back(disc_->pressure);
    s.r.emplace_back(disc_->pressure);
  }
  return s;
}

void CoupledStepper::step(EnsembleState& state) {
  const Discretization& d = *disc_;
  const int nj = state.size();
  const double dt = config_.dt;
  const double t_next = (state.n + 1) * dt;
  const auto stats = stochastic::ensemble_stats(state.v, state.w, d.rule());
  const double graddiv = config_.coupled_graddiv ? config_.gamma : 0.0;

  // sub-problem 0 solves for v (wind <w>), sub-problem 1 for w (wind <v>)
  std::vector<fem::FeFunction> new_z[2], new_p[2];
  for (int which = 0; which < 2; ++which) {
    const auto& other = which == 0 ? stats.w : stats.v;
    const auto& z = which == 0 ? state.v : state.w;
    const auto& zo = which == 0 ? state.w : state.v;
    const auto& bcs = which == 0 ? bc_v_ : bc_w_;

    const long before = linalg::Factorization::numeric_count();
    const std::vector<double> kappa = momentum_kappa(*visc_, other.l_sq, config_.mu, dt);
    const std::vector<Vec2> wind = fem::eval_vector(other.mean, d.rule());
    fem::MomentumTerms terms;
    terms.mass = 1.0 / dt;
    terms.diffusion_field = &kappa;
    terms.wind = &wind;
    terms.graddiv = graddiv;
    const linalg::SparseMatrix a = d.momentum->assemble(terms);
    ++counters_.momentum_assemblies;
    SubproblemSolver solver(saddle_matrix(d, a, dirichlet_dofs_, pin_saddle_), config_.solver, false);

    std::vector<std::vector<double>> rhs(nj);
    for (int j = 0; j < nj; ++j) {
      MomentumRhsInput in;
      in.previous = &z[j];
      in.lagged = &z[j];
      in.lagged_other = &zo[j];
      in.wind_fluct = &other.fluctuations[j];
      in.half_diff = &visc_->half_diff[j];
      in.half_fluct = &visc_->half_fluct[j];
      in.forcing = which == 0 ? &problem_.realizations[j].f1 : &problem_.realizations[j].f2;
      rhs[j] = momentum_rhs(d, in, t_next, dt);
      rhs[j].resize(d.nv() + d.np(), 0.0);
      bcs[j].apply(rhs[j], t_next);
      if (pin_saddle_) rhs[j][d.nv()] = 0.0;
    }
    const auto sol = solver.solve(rhs);
    counters_.solves += nj;
    count_factorization(static_cast<int>(linalg::Factorization::numeric_count() - before));

    for (int j = 0; j < nj; ++j) {
      new_z[which].emplace_back(d.velocity, std::vector<double>(sol[j].begin(), sol[j].begin() + d.nv()));
      fem::FeFunction p(d.pressure, std::vector<double>(sol[j].begin() + d.nv(), sol[j].end()));
      fem::remove_mean(p);
      new_p[which].push_back(std::move(p));
    }
  }
  state.v = std::move(new_z[0]);
  state.w = std::move(new_z[1]);
  state.q = std::move(new_p[0]);
  state.r = std::move(new_p[1]);
  ++state.n;
  state.t = t_next;
  ++counters_.steps;
  check_finite(state.v, state.n, "v");
  check_finite(state.w, state.n, "w");
}

std::unique_ptr<StepperBase> make_stepper(Algorithm a, std::shared_ptr<const Discretization> disc,
                                          const SchemeConfig& config, const Problem& problem,
                                          std::shared_ptr<const ViscosityData> visc) {
  if (a == Algorithm::coupled) return std::make_unique<CoupledStepper>(std::move(disc), config, problem, std::move(visc));
  return std::make_unique<SppStepper>(std::move(disc), config, problem, std::move(visc));
}

}  // namespace mhduq::schemes
