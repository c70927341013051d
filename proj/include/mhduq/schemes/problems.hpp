#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mhduq/common/types.hpp"
#include "mhduq/elsasser/mms.hpp"
#include "mhduq/mesh/tri_mesh.hpp"
#include "mhduq/stochastic/plan.hpp"

namespace mhduq::schemes {

/// Elsasser data of one realization. Forcings may be empty (zero).
struct RealizationData {
  VectorFunction v0, w0;
  VectorFunction f1, f2;
  VectorFunction v_bc, w_bc;
};

/// A boundary value problem plus its realization family.
struct Problem {
  std::string name;
  std::shared_ptr<const mesh::TriMesh> mesh;
  double s = 1.0;
  /// Boundary part carrying strong data in the momentum solves (always the whole boundary here).
  mesh::BoundaryTag dirichlet_tag = mesh::BoundaryTag::all;
  /// Boundary part where the projected field has zero normal component.
  mesh::BoundaryTag normal_tag = mesh::BoundaryTag::all;
  std::vector<RealizationData> realizations;
  /// Manufactured solutions per realization, when the problem has them.
  std::vector<elsasser::MmsSolution> exact;

  int size() const { return static_cast<int>(realizations.size()); }
  /// True when the normal constraint covers every boundary edge (pressure then fixed up to a constant).
  bool normal_covers_boundary() const;
};

/// Manufactured-solution problem on the given mesh; realization j uses k_j, nu_j, nu_m,j of the plan.
Problem make_mms_problem(std::shared_ptr<const mesh::TriMesh> mesh, const stochastic::StochasticPlan& plan,
                         double s = 1.0);

/// Flow past the step: parabolic inflow/outflow, B = (0,1) there, no-slip walls with B = a (0,1),
/// initial u = inflow profile and B = 0.
Problem make_channel_problem(std::shared_ptr<const mesh::TriMesh> mesh, const stochastic::StochasticPlan& plan,
                             double s);

/// Regularized lid-driven cavity on (-1,1)^2: lid u = a ((1-x^2)^2, 0), no-slip elsewhere,
/// B = a (0,1) on the whole boundary, start from rest with B = 0.
Problem make_cavity_problem(std::shared_ptr<const mesh::TriMesh> mesh, const stochastic::StochasticPlan& plan,
                            double s);

/// Zero forcing and homogeneous boundary data with the given initial fields per realization.
Problem make_homogeneous_problem(std::shared_ptr<const mesh::TriMesh> mesh, std::vector<VectorFunction> v0,
                                 std::vector<VectorFunction> w0, double s = 1.0);

}  // namespace mhduq::schemes
