#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "mhduq/schemes/config.hpp"
#include "mhduq/schemes/discretization.hpp"
#include "mhduq/schemes/problems.hpp"
#include "mhduq/schemes/stability.hpp"
#include "mhduq/schemes/steppers.hpp"
#include "mhduq/stochastic/plan.hpp"

namespace mhduq::schemes {

/// What a per-level observer sees.
struct StepView {
  Algorithm algorithm;
  int n;
  double t;
  const EnsembleState& state;
  const Discretization& disc;
};

struct RunOptions {
  /// Called for n = 0 and after every step.
  std::function<void(const StepView&)> on_step;
  /// Records the energy series (and the primitive reconstruction it needs).
  bool record_energy = true;
};

struct RunResult {
  Algorithm algorithm = Algorithm::spp;
  int steps = 0;
  std::vector<double> times;
  std::vector<std::vector<double>> energy;  ///< [n][j] 1/2 ||u_j||
  std::vector<double> mean_energy;          ///< sum_j w^j 1/2 ||u_j||
  std::vector<double> mean_kinetic_energy;  ///< sum_j w^j 1/2 ||u_j||^2
  StabilityReport stability;
  SolveCounters counters;
  EnsembleState final_state;
  double wall_seconds = 0.0;

  /// Projection invariants held (trivially true for the coupled scheme).
  bool invariants_ok() const;
};

/// Advances M = T / dt steps. Throws SolutionBlowup on non-finite fields.
RunResult run_transient(Algorithm algorithm, const SchemeConfig& config, const stochastic::StochasticPlan& plan,
                        const Problem& problem, std::shared_ptr<const Discretization> disc,
                        const RunOptions& options = {});

/// As above, building the discretization from the problem mesh and config pair.
RunResult run_transient(Algorithm algorithm, const SchemeConfig& config, const stochastic::StochasticPlan& plan,
                        const Problem& problem, const RunOptions& options = {});

/// Primitive velocities u_j = (v_j + w_j) / 2 of the fields selected by primary_v/primary_w.
std::vector<fem::FeFunction> primitive_velocities(const EnsembleState& state, Algorithm algorithm);

}  // namespace mhduq::schemes
