#pragma once

#include <memory>
#include <vector>

#include "mhduq/fem/boundary.hpp"
#include "mhduq/fem/fe_space.hpp"
#include "mhduq/schemes/config.hpp"
#include "mhduq/schemes/discretization.hpp"
#include "mhduq/schemes/problems.hpp"
#include "mhduq/schemes/stability.hpp"
#include "mhduq/stochastic/ensemble.hpp"

namespace mhduq::schemes {

/// Per-realization fields at time level n. The projection scheme fills the hat/tilde
/// members, the coupled scheme v, w, q, r.
struct EnsembleState {
  int n = 0;
  double t = 0.0;
  std::vector<fem::FeFunction> v_hat, v_tilde, q_hat, w_hat, w_tilde, r_hat;
  std::vector<fem::FeFunction> v, w, q, r;

  int size() const;
};

/// The fields entering ensemble means, energies and errors: v^, w^ for spp, v, w for coupled.
const std::vector<fem::FeFunction>& primary_v(const EnsembleState& s, Algorithm a);
const std::vector<fem::FeFunction>& primary_w(const EnsembleState& s, Algorithm a);

/// Data both steppers need: discretization, config, problem, viscosities, boundary handling.
class StepperBase {
 public:
  StepperBase(std::shared_ptr<const Discretization> disc, const SchemeConfig& config, const Problem& problem,
              std::shared_ptr<const ViscosityData> visc);
  virtual ~StepperBase() = default;

  virtual EnsembleState initial_state() const = 0;
  /// Advances n -> n + 1.
  virtual void step(EnsembleState& state) = 0;

  const SolveCounters& counters() const { return counters_; }
  const Discretization& discretization() const { return *disc_; }

 protected:
  /// Throws SolutionBlowup if any field of realization j is not finite.
  static void check_finite(const std::vector<fem::FeFunction>& fields, int step, const char* what);
  void count_factorization(int per_step);

  std::shared_ptr<const Discretization> disc_;
  SchemeConfig config_;
  const Problem& problem_;
  std::shared_ptr<const ViscosityData> visc_;
  std::vector<fem::DirichletBc> bc_v_, bc_w_;
  std::vector<int> dirichlet_dofs_;
  bool pin_saddle_ = true;
  SolveCounters counters_;
};

/// Coupled scheme: two saddle-point solves per step, one matrix each shared by all j.
class CoupledStepper final : public StepperBase {
 public:
  using StepperBase::StepperBase;
  EnsembleState initial_state() const override;
  void step(EnsembleState& state) override;
};

/// Penalty-projection scheme: Steps 1-4 per time step; the projection matrix is
/// factorized once for the whole run.
class SppStepper final : public StepperBase {
 public:
  SppStepper(std::shared_ptr<const Discretization> disc, const SchemeConfig& config, const Problem& problem,
             std::shared_ptr<const ViscosityData> visc);
  EnsembleState initial_state() const override;
  void step(EnsembleState& state) override;

  const ProjectionMonitor& projection_monitor() const { return monitor_; }

  /// Step 1 (which = 0) or Step 3 (which = 1) matrix for the given level-n ensemble, Dirichlet rows applied.
  linalg::SparseMatrix momentum_matrix(const EnsembleState& state, int which) const;

 private:
  linalg::SparseMatrix momentum_from_stats(const stochastic::EnsembleStats& stats, int which) const;
  /// Steps 2/4: projected fields and pressures for the given intermediate fields.
  void project(const std::vector<fem::FeFunction>& hat, std::vector<fem::FeFunction>& tilde,
               std::vector<fem::FeFunction>& pressure);

  std::vector<int> normal_dofs_;
  bool pin_projection_ = true;
  std::unique_ptr<linalg::Factorization> projection_;
  ProjectionMonitor monitor_;
};

std::unique_ptr<StepperBase> make_stepper(Algorithm a, std::shared_ptr<const Discretization> disc,
                                          const SchemeConfig& config, const Problem& problem,
                                          std::shared_ptr<const ViscosityData> visc);

}  // namespace mhduq::schemes
