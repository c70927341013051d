#include "mhduq/schemes/transient.hpp"

#include <chrono>
#include <stdexcept>

#include "mhduq/fem/norms.hpp"

namespace mhduq::schemes {

bool RunResult::invariants_ok() const {
  return algorithm == Algorithm::coupled || stability.projection.checks == 0 || stability.projection.ok();
}

std::vector<fem::FeFunction> primitive_velocities(const EnsembleState& state, Algorithm algorithm) {
  const auto& v = primary_v(state, algorithm);
  const auto& w = primary_w(state, algorithm);
  std::vector<fem::FeFunction> u;
  u.reserve(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) u.push_back(fem::linear_combination(0.5, v[j], 0.5, w[j]));
  return u;
}

namespace {

void record_level(RunResult& r, const EnsembleState& s, const stochastic::StochasticPlan& plan,
                  const SchemeConfig& config, const RunOptions& options) {
  r.times.push_back(s.t);
  if (options.record_energy) {
    const auto u = primitive_velocities(s, r.algorithm);
    std::vector<double> e(u.size());
    std::vector<double> k(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
      const double l = fem::l2_norm(u[j]);
      e[j] = 0.5 * l;
      k[j] = 0.5 * l * l;
    }
    r.mean_energy.push_back(stochastic::qoi_expectation(e, plan));
    r.mean_kinetic_energy.push_back(stochastic::qoi_expectation(k, plan));
    r.energy.push_back(std::move(e));
  }
  if (config.monitor_energy)
    record_functional(r.stability, primary_v(s, r.algorithm), primary_w(s, r.algorithm), config.gamma, config.dt,
                      s.n > 0);
}

}  // namespace

RunResult run_transient(Algorithm algorithm, const SchemeConfig& config, const stochastic::StochasticPlan& plan,
                        const Problem& problem, std::shared_ptr<const Discretization> disc,
                        const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  config.validate();
  if (plan.size() != problem.size()) throw std::invalid_argument("plan and problem have different realization counts");
  const int m = config.steps();

  auto visc = std::make_shared<const ViscosityData>(make_viscosity_data(plan, *disc));
  auto stepper = make_stepper(algorithm, disc, config, problem, visc);

  RunResult r;
  r.algorithm = algorithm;
  r.stability = stability_params(visc->fields, config.mu, config.dt);

  EnsembleState state = stepper->initial_state();
  record_level(r, state, plan, config, options);
  if (options.on_step) options.on_step({algorithm, state.n, state.t, state, *disc});
  for (int n = 0; n < m; ++n) {
    stepper->step(state);
    record_level(r, state, plan, config, options);
    if (options.on_step) options.on_step({algorithm, state.n, state.t, state, *disc});
  }
  r.steps = m;
  r.counters = stepper->counters();
  if (const auto* spp = dynamic_cast<const SppStepper*>(stepper.get())) r.stability.projection = spp->projection_monitor();
  r.final_state = std::move(state);
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

RunResult run_transient(Algorithm algorithm, const SchemeConfig& config, const stochastic::StochasticPlan& plan,
                        const Problem& problem, const RunOptions& options) {
  auto disc = std::make_shared<const Discretization>(make_discretization(problem.mesh, config.pair));
  return run_transient(algorithm, config, plan, problem, std::move(disc), options);
}

}  // namespace mhduq::schemes
