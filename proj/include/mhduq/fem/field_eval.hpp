#pragma once

#include <vector>

#include "mhduq/fem/fe_space.hpp"
#include "mhduq/fem/quadrature.hpp"

namespace mhduq::fem {

/// Reference basis values of one family tabulated at the points of a rule.
class BasisTable {
 public:
  BasisTable(Family family, QuadratureRule rule);

  Family family() const { return family_; }
  const QuadratureRule& rule() const { return rule_; }
  int n_points() const { return rule_.size(); }
  int n_local() const { return n_local_; }

  /// Basis values at point q (n_local entries).
  const double* values(int q) const { return values_.data() + static_cast<std::size_t>(q) * n_local_; }
  /// Physical basis gradients at point q of an element.
  void gradients(int q, const ElementGeometry& geo, Vec2* out) const {
    basis_gradients(family_, rule_.points[q], geo.grad_lambda, out);
  }

 private:
  Family family_;
  QuadratureRule rule_;
  int n_local_;
  std::vector<double> values_;
};

// ============================================================================
// Field values at quadrature points, laid out as t * n_points + q
// ============================================================================

std::vector<Point> quadrature_points(const mesh::TriMesh& mesh, const QuadratureRule& rule);
std::vector<double> eval_scalar(const FeFunction& u, const QuadratureRule& rule);
std::vector<Vec2> eval_vector(const FeFunction& u, const QuadratureRule& rule);
std::vector<Mat2> eval_gradient(const FeFunction& u, const QuadratureRule& rule);

/// Values and gradients of a vector FeFunction in one sweep.
void eval_vector_and_gradient(const FeFunction& u, const QuadratureRule& rule, std::vector<Vec2>& values,
                              std::vector<Mat2>& gradients);

}  // namespace mhduq::fem
