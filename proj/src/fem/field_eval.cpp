#include "mhduq/fem/field_eval.hpp"

namespace mhduq::fem {

BasisTable::BasisTable(Family family, QuadratureRule rule)
    : family_(family), rule_(std::move(rule)), n_local_(local_size(family)) {
  values_.resize(static_cast<std::size_t>(rule_.size()) * n_local_);
  for (int q = 0; q < rule_.size(); ++q) basis_values(family_, rule_.points[q], values_.data() + q * n_local_);
}

std::vector<Point> quadrature_points(const mesh::TriMesh& mesh, const QuadratureRule& rule) {
  const int nq = rule.size();
  std::vector<Point> pts(static_cast<std::size_t>(mesh.n_triangles()) * nq);
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementGeometry geo = element_geometry(mesh, t);
    for (int q = 0; q < nq; ++q) pts[t * nq + q] = geo.map(rule.points[q]);
  }
  return pts;
}

std::vector<double> eval_scalar(const FeFunction& u, const QuadratureRule& rule) {
  const FeSpace& space = *u.space;
  const BasisTable table(space.family(), rule);
  const int nq = rule.size(), nl = table.n_local();
  std::vector<double> out(static_cast<std::size_t>(space.mesh().n_triangles()) * nq, 0.0);
  for (int t = 0; t < space.mesh().n_triangles(); ++t) {
    const auto dofs = space.element_dofs(t);
    for (int q = 0; q < nq; ++q) {
      const double* phi = table.values(q);
      double s = 0.0;
      for (int i = 0; i < nl; ++i) s += phi[i] * u.coefficients[dofs[i]];
      out[t * nq + q] = s;
    }
  }
  return out;
}

void eval_vector_and_gradient(const FeFunction& u, const QuadratureRule& rule, std::vector<Vec2>& values,
                              std::vector<Mat2>& gradients) {
  const FeSpace& space = *u.space;
  if (space.components() != 2) throw std::invalid_argument("eval_vector needs a 2-component field");
  const BasisTable table(space.family(), rule);
  const int nq = rule.size(), nl = table.n_local(), ns = space.n_scalar_dofs();
  const std::size_t total = static_cast<std::size_t>(space.mesh().n_triangles()) * nq;
  values.assign(total, Vec2{0.0, 0.0});
  gradients.assign(total, Mat2{});
  Vec2 grad[6];
  double c0[6], c1[6];
  for (int t = 0; t < space.mesh().n_triangles(); ++t) {
    const ElementGeometry geo = element_geometry(space.mesh(), t);
    const auto dofs = space.element_dofs(t);
    for (int i = 0; i < nl; ++i) {
      c0[i] = u.coefficients[dofs[i]];
      c1[i] = u.coefficients[ns + dofs[i]];
    }
    for (int q = 0; q < nq; ++q) {
      const double* phi = table.values(q);
      table.gradients(q, geo, grad);
      Vec2 val{0.0, 0.0};
      Mat2 g{};
      for (int i = 0; i < nl; ++i) {
        val[0] += phi[i] * c0[i];
        val[1] += phi[i] * c1[i];
        g[0][0] += c0[i] * grad[i][0];
        g[0][1] += c0[i] * grad[i][1];
        g[1][0] += c1[i] * grad[i][0];
        g[1][1] += c1[i] * grad[i][1];
      }
      values[t * nq + q] = val;
      gradients[t * nq + q] = g;
    }
  }
}

std::vector<Vec2> eval_vector(const FeFunction& u, const QuadratureRule& rule) {
  std::vector<Vec2> v;
  std::vector<Mat2> g;
  eval_vector_and_gradient(u, rule, v, g);
  return v;
}

std::vector<Mat2> eval_gradient(const FeFunction& u, const QuadratureRule& rule) {
  std::vector<Vec2> v;
  std::vector<Mat2> g;
  eval_vector_and_gradient(u, rule, v, g);
  return g;
}

}  // namespace mhduq::fem
