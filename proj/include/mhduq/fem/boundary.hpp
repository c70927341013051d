#pragma once

#include <vector>

#include "mhduq/fem/fe_space.hpp"
#include "mhduq/linalg/sparse_matrix.hpp"
#include "mhduq/mesh/tri_mesh.hpp"

namespace mhduq::fem {

/// Strong data g on the boundary dofs whose tag matches `tag`.
struct DirichletCondition {
  mesh::BoundaryTag tag;
  VectorFunction g;
};

/// Dirichlet constraint set on a vector space. Each boundary scalar dof takes
/// the first condition whose selector matches its tag (vertex tags follow the
/// strong-BC precedence); unmatched boundary dofs stay free.
class DirichletBc {
 public:
  DirichletBc(SpacePtr space, std::vector<DirichletCondition> conditions);

  /// Constrained vector dofs, sorted.
  const std::vector<int>& dofs() const { return dofs_; }

  /// Interpolated boundary values at time t, aligned with dofs().
  std::vector<double> values(double t) const;

  /// Writes the boundary values into a full-length vector (rhs or coefficients).
  void apply(std::vector<double>& target, double t, int offset = 0) const;
  /// Same values for every member of a multi-rhs set.
  void apply(std::vector<std::vector<double>>& targets, double t, int offset = 0) const;

 private:
  SpacePtr space_;
  std::vector<DirichletCondition> conditions_;
  std::vector<int> scalar_dofs_;
  std::vector<int> condition_of_;
  std::vector<int> dofs_;
};

/// Vector dofs whose component normal to a `selector`-tagged boundary edge is
/// constrained. Corner dofs touching a horizontal and a vertical tagged edge
/// get both components. Throws MeshError on non-axis-aligned tagged edges.
std::vector<int> normal_component_dofs(const FeSpace& space, mesh::BoundaryTag selector);

/// Replaces the listed rows by identity rows (the diagonal must be stored).
void constrain_rows(linalg::SparseMatrix& a, const std::vector<int>& rows, int offset = 0);

/// Sets the listed entries of a vector to zero.
void zero_entries(std::vector<double>& target, const std::vector<int>& rows, int offset = 0);

}  // namespace mhduq::fem
