#include "mhduq/fem/norms.hpp"

#include <algorithm>
#include <cmath>

#include "mhduq/fem/field_eval.hpp"

namespace mhduq::fem {

namespace {

/// Sums w_q * 2|T| * f(t, q, lambda) over all quadrature points.
template <class F>
double integrate_over_mesh(const mesh::TriMesh& mesh, const QuadratureRule& rule, F&& f) {
  double total = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementGeometry geo = element_geometry(mesh, t);
    double local = 0.0;
    for (int q = 0; q < rule.size(); ++q) local += rule.weights[q] * f(t, q, geo);
    total += 2.0 * geo.area * local;
  }
  return total;
}

void gradient_at(const FeFunction& u, int t, const std::array<double, 3>& lambda, const ElementGeometry& geo,
                 Mat2& g) {
  const FeSpace& s = *u.space;
  Vec2 grad[6];
  basis_gradients(s.family(), lambda, geo.grad_lambda, grad);
  const auto d = s.element_dofs(t);
  g = Mat2{};
  for (int c = 0; c < s.components(); ++c)
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double coef = u.coefficients[s.dof(c, d[i])];
      g[c][0] += coef * grad[i][0];
      g[c][1] += coef * grad[i][1];
    }
}

}  // namespace

double l2_norm(const FeFunction& u, int degree) { return std::sqrt(std::max(0.0, l2_inner(u, u, degree))); }

double l2_inner(const FeFunction& u, const FeFunction& v, int degree) {
  if (u.space != v.space) throw std::invalid_argument("l2_inner on different spaces");
  const QuadratureRule rule = triangle_rule(degree);
  const int nc = u.space->components();
  return integrate_over_mesh(u.space->mesh(), rule, [&](int t, int q, const ElementGeometry&) {
    double s = 0.0;
    for (int c = 0; c < nc; ++c) s += u.value(t, rule.points[q], c) * v.value(t, rule.points[q], c);
    return s;
  });
}

double h1_seminorm(const FeFunction& u, int degree) {
  const QuadratureRule rule = triangle_rule(degree);
  const double s = integrate_over_mesh(u.space->mesh(), rule, [&](int t, int q, const ElementGeometry& geo) {
    Mat2 g;
    gradient_at(u, t, rule.points[q], geo, g);
    return g[0][0] * g[0][0] + g[0][1] * g[0][1] + g[1][0] * g[1][0] + g[1][1] * g[1][1];
  });
  return std::sqrt(std::max(0.0, s));
}

double h1_norm(const FeFunction& u, int degree) { return std::hypot(l2_norm(u, degree), h1_seminorm(u, degree)); }

double div_l2_norm(const FeFunction& u, int degree) {
  if (u.space->components() != 2) throw std::invalid_argument("div_l2_norm needs a vector field");
  const QuadratureRule rule = triangle_rule(degree);
  const double s = integrate_over_mesh(u.space->mesh(), rule, [&](int t, int q, const ElementGeometry& geo) {
    Mat2 g;
    gradient_at(u, t, rule.points[q], geo, g);
    const double d = g[0][0] + g[1][1];
    return d * d;
  });
  return std::sqrt(std::max(0.0, s));
}

double linf_nodal(const FeFunction& u) {
  double m = 0.0;
  for (double c : u.coefficients) m = std::max(m, std::abs(c));
  return m;
}

double norm(const FeFunction& u, NormKind kind, int degree) {
  switch (kind) {
    case NormKind::L2: return l2_norm(u, degree);
    case NormKind::H1semi: return h1_seminorm(u, degree);
    case NormKind::Linf_nodal: return linf_nodal(u);
    case NormKind::divL2: return div_l2_norm(u, degree);
  }
  return 0.0;
}

double integrate(const FeFunction& p, int degree) {
  if (p.space->components() != 1) throw std::invalid_argument("integrate needs a scalar field");
  const QuadratureRule rule = triangle_rule(degree);
  return integrate_over_mesh(p.space->mesh(), rule,
                             [&](int t, int q, const ElementGeometry&) { return p.value(t, rule.points[q]); });
}

void remove_mean(FeFunction& p) {
  const double mean = integrate(p, 2) / p.space->mesh().total_area();
  for (double& c : p.coefficients) c -= mean;
}

double l2_error(const FeFunction& u, const VectorFunction& exact, double t, int degree) {
  const QuadratureRule rule = triangle_rule(degree);
  const double s = integrate_over_mesh(u.space->mesh(), rule, [&](int tri, int q, const ElementGeometry& geo) {
    const Vec2 e = u.vector_value(tri, rule.points[q]) - exact(t, geo.map(rule.points[q]));
    return dot(e, e);
  });
  return std::sqrt(std::max(0.0, s));
}

double l2_error(const FeFunction& p, const ScalarFunction& exact, double t, int degree) {
  const QuadratureRule rule = triangle_rule(degree);
  const double s = integrate_over_mesh(p.space->mesh(), rule, [&](int tri, int q, const ElementGeometry& geo) {
    const double e = p.value(tri, rule.points[q]) - exact(t, geo.map(rule.points[q]));
    return e * e;
  });
  return std::sqrt(std::max(0.0, s));
}

double h1_semi_error(const FeFunction& u, const GradientFunction& exact_grad, double t, int degree) {
  const QuadratureRule rule = triangle_rule(degree);
  const double s = integrate_over_mesh(u.space->mesh(), rule, [&](int tri, int q, const ElementGeometry& geo) {
    Mat2 g;
    gradient_at(u, tri, rule.points[q], geo, g);
    const Mat2 ge = exact_grad(t, geo.map(rule.points[q]));
    double e = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) e += (g[a][b] - ge[a][b]) * (g[a][b] - ge[a][b]);
    return e;
  });
  return std::sqrt(std::max(0.0, s));
}

FeFunction interpolate(const VectorFunction& f, double t, SpacePtr space) {
  if (space->components() != 2) throw std::invalid_argument("vector interpolation needs a vector space");
  FeFunction u(space);
  for (int sd = 0; sd < space->n_scalar_dofs(); ++sd) {
    const Vec2 v = f(t, space->node(sd));
    u[space->dof(0, sd)] = v[0];
    u[space->dof(1, sd)] = v[1];
  }
  return u;
}

FeFunction interpolate(const ScalarFunction& f, double t, SpacePtr space) {
  if (space->components() != 1) throw std::invalid_argument("scalar interpolation needs a scalar space");
  FeFunction u(space);
  for (int sd = 0; sd < space->n_scalar_dofs(); ++sd) u[sd] = f(t, space->node(sd));
  return u;
}

}  // namespace mhduq::fem
