#pragma once

#include <memory>
#include <vector>

#include "mhduq/fem/assembly.hpp"
#include "mhduq/fem/boundary.hpp"
#include "mhduq/fem/fe_space.hpp"
#include "mhduq/linalg/factorization.hpp"
#include "mhduq/linalg/sparse_matrix.hpp"
#include "mhduq/schemes/config.hpp"
#include "mhduq/schemes/problems.hpp"
#include "mhduq/stochastic/ensemble.hpp"
#include "mhduq/stochastic/plan.hpp"

namespace mhduq::schemes {

/// Spaces, fixed operators and per-realization data shared by both schemes.
struct Discretization {
  std::shared_ptr<const mesh::TriMesh> mesh;
  ElementPair pair = ElementPair::taylor_hood;
  fem::SpacePtr velocity;  ///< P2 vector space
  fem::SpacePtr pressure;  ///< P1 or P1disc, zero mean
  std::shared_ptr<const fem::MomentumAssembler> momentum;
  linalg::SparseMatrix div;    ///< (div u, zeta): np x nv
  linalg::SparseMatrix div_t;  ///< transpose of div
  linalg::SparseMatrix mass;   ///< velocity mass matrix
  std::vector<Point> points;   ///< quadrature points of momentum->rule()

  int nv() const { return velocity->n_dofs(); }
  int np() const { return pressure->n_dofs(); }
  const fem::QuadratureRule& rule() const { return momentum->rule(); }
};

Discretization make_discretization(std::shared_ptr<const mesh::TriMesh> mesh, ElementPair pair);

/// Saddle matrix [a, -div^T; div, 0] with identity rows on `velocity_rows`, and on
/// pressure dof 0 when `pin_pressure` is set.
linalg::SparseMatrix saddle_matrix(const Discretization& d, const linalg::SparseMatrix& a,
                                   const std::vector<int>& velocity_rows, bool pin_pressure);

/// Inputs of one realization's explicit momentum right-hand side.
struct MomentumRhsInput {
  const fem::FeFunction* previous = nullptr;  ///< field in the mass term (v~^n, or v^n for the coupled scheme)
  const fem::FeFunction* lagged = nullptr;    ///< z^n_j in the fluctuation terms
  const fem::FeFunction* lagged_other = nullptr;  ///< the other Elsasser field at level n
  const fem::FeFunction* wind_fluct = nullptr;    ///< other field's fluctuation, advecting z^n_j
  const std::vector<double>* half_diff = nullptr;   ///< (nu_j - nu_m,j)/2 at rule points
  const std::vector<double>* half_fluct = nullptr;  ///< (nu'_j + nu'_m,j)/2 at rule points
  const VectorFunction* forcing = nullptr;          ///< may be null or empty
};

/// (previous/dt + f(t), chi) - b(wind', lagged, chi) - (half_diff grad other + half_fluct grad lagged, grad chi).
std::vector<double> momentum_rhs(const Discretization& d, const MomentumRhsInput& in, double t, double dt);

/// Viscosity data shared by the momentum forms.
struct ViscosityData {
  stochastic::MaterializedViscosity fields;
  std::vector<double> mean_half;                ///< (nu_bar + nu_m_bar)/2
  std::vector<std::vector<double>> half_diff;   ///< per j
  std::vector<std::vector<double>> half_fluct;  ///< per j
};

ViscosityData make_viscosity_data(const stochastic::StochasticPlan& plan, const Discretization& d);

/// (nu_bar + nu_m_bar)/2 + 2 mu dt l^2 at rule points.
std::vector<double> momentum_kappa(const ViscosityData& visc, const std::vector<double>& l_sq, double mu, double dt);

/// Per-step work counters used to verify that matrices are shared across realizations.
struct SolveCounters {
  int steps = 0;
  int momentum_assemblies = 0;         ///< total over the run
  int momentum_factorizations = 0;     ///< total over the run
  int max_factorizations_per_subproblem_step = 0;
  int projection_factorizations = 0;   ///< spp only
  int solves = 0;
};

/// A matrix with a direct factorization, or the matrix itself for Krylov solves.
class SubproblemSolver {
 public:
  SubproblemSolver(linalg::SparseMatrix a, const SolverSettings& settings, bool allow_iterative);
  std::vector<std::vector<double>> solve(const std::vector<std::vector<double>>& rhs) const;
  const linalg::SparseMatrix& matrix() const { return a_; }
  bool factorized() const { return factor_ != nullptr; }

 private:
  linalg::SparseMatrix a_;
  SolverSettings settings_;
  std::shared_ptr<const linalg::Factorization> factor_;
};

}  // namespace mhduq::schemes
