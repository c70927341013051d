#pragma once

#include <array>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "mhduq/common/types.hpp"
#include "mhduq/mesh/tri_mesh.hpp"

namespace mhduq::fem {

/// Lagrange families on triangles. P1disc carries three element-local dofs.
enum class Family { P1, P2, P1disc };

std::string_view to_string(Family family);

/// Number of scalar basis functions per triangle.
constexpr int local_size(Family family) { return family == Family::P2 ? 6 : 3; }

/// Basis values at barycentric point `lambda`. P2 ordering: vertex functions
/// 0..2, then edge functions k = 3..5 for the edge joining local vertices
/// (k-3) and (k-2)%3.
void basis_values(Family family, const std::array<double, 3>& lambda, double* out);
void basis_gradients(Family family, const std::array<double, 3>& lambda,
                     const std::array<Vec2, 3>& grad_lambda, Vec2* out);

/// Affine element data: area and constant barycentric gradients.
struct ElementGeometry {
  double area = 0.0;
  std::array<Point, 3> corners;
  std::array<Vec2, 3> grad_lambda;

  Point map(const std::array<double, 3>& lambda) const {
    return {lambda[0] * corners[0].x + lambda[1] * corners[1].x + lambda[2] * corners[2].x,
            lambda[0] * corners[0].y + lambda[1] * corners[1].y + lambda[2] * corners[2].y};
  }
};

ElementGeometry element_geometry(const mesh::TriMesh& mesh, int t);

/// Where a scalar dof lives on the mesh.
struct DofEntity {
  enum class Kind { vertex, edge, element } kind;
  int index;
};

/// Scalar or 2-vector Lagrange space on a TriMesh.
///
/// Vector dofs are component-blocked: dof(c, s) = c * n_scalar_dofs() + s.
class FeSpace {
 public:
  FeSpace(std::shared_ptr<const mesh::TriMesh> mesh, Family family, int components,
          bool zero_mean = false);

  const mesh::TriMesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const mesh::TriMesh>& mesh_ptr() const { return mesh_; }
  Family family() const { return family_; }
  int components() const { return components_; }
  /// Pressure spaces carry the L^2_0 constraint (pinned during solves, mean removed after).
  bool zero_mean() const { return zero_mean_; }

  int n_scalar_dofs() const { return n_scalar_; }
  int n_dofs() const { return components_ * n_scalar_; }
  int local_size() const { return fem::local_size(family_); }
  int dof(int component, int scalar_dof) const { return component * n_scalar_ + scalar_dof; }

  std::span<const int> element_dofs(int t) const {
    const int n = local_size();
    return {element_dofs_.data() + static_cast<std::size_t>(t) * n, static_cast<std::size_t>(n)};
  }

  /// Lagrange node of a scalar dof.
  const Point& node(int scalar_dof) const { return nodes_[scalar_dof]; }
  const DofEntity& entity(int scalar_dof) const { return entities_[scalar_dof]; }

  /// Boundary tag of a scalar dof (vertices use the strong-BC precedence), or none.
  std::optional<mesh::BoundaryTag> boundary_tag(int scalar_dof) const;

  bool same_mesh(const FeSpace& other) const { return mesh_ == other.mesh_; }

 private:
  std::shared_ptr<const mesh::TriMesh> mesh_;
  Family family_;
  int components_;
  bool zero_mean_;
  int n_scalar_ = 0;
  std::vector<int> element_dofs_;
  std::vector<Point> nodes_;
  std::vector<DofEntity> entities_;
};

using SpacePtr = std::shared_ptr<const FeSpace>;

/// Coefficient vector over an FeSpace.
struct FeFunction {
  SpacePtr space;
  std::vector<double> coefficients;

  FeFunction() = default;
  explicit FeFunction(SpacePtr s) : space(std::move(s)), coefficients(space->n_dofs(), 0.0) {}
  FeFunction(SpacePtr s, std::vector<double> c);

  std::size_t size() const { return coefficients.size(); }
  double& operator[](std::size_t i) { return coefficients[i]; }
  double operator[](std::size_t i) const { return coefficients[i]; }

  /// Value of component c at a barycentric point of triangle t.
  double value(int t, const std::array<double, 3>& lambda, int component = 0) const;
  Vec2 vector_value(int t, const std::array<double, 3>& lambda) const;
};

/// a * x + b * y on a shared space.
FeFunction linear_combination(double a, const FeFunction& x, double b, const FeFunction& y);
bool all_finite(const FeFunction& f);

}  // namespace mhduq::fem
