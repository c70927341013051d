#include "mhduq/fem/fe_space.hpp"

#include <cmath>

namespace mhduq::fem {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::P1: return "P1";
    case Family::P2: return "P2";
    case Family::P1disc: return "P1disc";
  }
  return "unknown";
}

void basis_values(Family family, const std::array<double, 3>& l, double* out) {
  if (family != Family::P2) {
    out[0] = l[0];
    out[1] = l[1];
    out[2] = l[2];
    return;
  }
  for (int i = 0; i < 3; ++i) out[i] = l[i] * (2.0 * l[i] - 1.0);
  for (int k = 0; k < 3; ++k) out[3 + k] = 4.0 * l[k] * l[(k + 1) % 3];
}

void basis_gradients(Family family, const std::array<double, 3>& l,
                     const std::array<Vec2, 3>& g, Vec2* out) {
  if (family != Family::P2) {
    out[0] = g[0];
    out[1] = g[1];
    out[2] = g[2];
    return;
  }
  for (int i = 0; i < 3; ++i) out[i] = (4.0 * l[i] - 1.0) * g[i];
  for (int k = 0; k < 3; ++k) {
    const int m = (k + 1) % 3;
    out[3 + k] = {4.0 * (l[k] * g[m][0] + l[m] * g[k][0]), 4.0 * (l[k] * g[m][1] + l[m] * g[k][1])};
  }
}

ElementGeometry element_geometry(const mesh::TriMesh& mesh, int t) {
  ElementGeometry geo;
  const auto& tri = mesh.triangle(t);
  for (int i = 0; i < 3; ++i) geo.corners[i] = mesh.vertex(tri[i]);
  const Point& a = geo.corners[0];
  const Point& b = geo.corners[1];
  const Point& c = geo.corners[2];
  const double area2 = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
  geo.area = 0.5 * area2;
  geo.grad_lambda[0] = {(b.y - c.y) / area2, (c.x - b.x) / area2};
  geo.grad_lambda[1] = {(c.y - a.y) / area2, (a.x - c.x) / area2};
  geo.grad_lambda[2] = {(a.y - b.y) / area2, (b.x - a.x) / area2};
  return geo;
}

FeSpace::FeSpace(std::shared_ptr<const mesh::TriMesh> mesh, Family family, int components,
                 bool zero_mean)
    : mesh_(std::move(mesh)), family_(family), components_(components), zero_mean_(zero_mean) {
  if (!mesh_) throw std::invalid_argument("FeSpace needs a mesh");
  if (components != 1 && components != 2) throw std::invalid_argument("FeSpace supports 1 or 2 components");
  const auto& m = *mesh_;
  const int nt = m.n_triangles();
  const int nl = local_size();
  element_dofs_.resize(static_cast<std::size_t>(nt) * nl);

  switch (family_) {
    case Family::P1:
    case Family::P2: {
      n_scalar_ = m.n_vertices() + (family_ == Family::P2 ? m.n_edges() : 0);
      nodes_.resize(n_scalar_);
      entities_.resize(n_scalar_);
      for (int v = 0; v < m.n_vertices(); ++v) {
        nodes_[v] = m.vertex(v);
        entities_[v] = {DofEntity::Kind::vertex, v};
      }
      if (family_ == Family::P2) {
        for (int e = 0; e < m.n_edges(); ++e) {
          const Point& a = m.vertex(m.edges()[e][0]);
          const Point& b = m.vertex(m.edges()[e][1]);
          nodes_[m.n_vertices() + e] = {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
          entities_[m.n_vertices() + e] = {DofEntity::Kind::edge, e};
        }
      }
      for (int t = 0; t < nt; ++t) {
        int* d = element_dofs_.data() + static_cast<std::size_t>(t) * nl;
        for (int i = 0; i < 3; ++i) d[i] = m.triangle(t)[i];
        if (family_ == Family::P2) {
          for (int k = 0; k < 3; ++k) d[3 + k] = m.n_vertices() + m.triangle_edges(t)[k];
        }
      }
      break;
    }
    case Family::P1disc: {
      n_scalar_ = 3 * nt;
      nodes_.resize(n_scalar_);
      entities_.resize(n_scalar_);
      for (int t = 0; t < nt; ++t) {
        for (int i = 0; i < 3; ++i) {
          element_dofs_[3 * t + i] = 3 * t + i;
          nodes_[3 * t + i] = m.vertex(m.triangle(t)[i]);
          entities_[3 * t + i] = {DofEntity::Kind::element, t};
        }
      }
      break;
    }
  }
}

std::optional<mesh::BoundaryTag> FeSpace::boundary_tag(int scalar_dof) const {
  const DofEntity& ent = entities_[scalar_dof];
  switch (ent.kind) {
    case DofEntity::Kind::vertex: return mesh_->vertex_tag(ent.index);
    case DofEntity::Kind::edge: return mesh_->edge_tag(ent.index);
    case DofEntity::Kind::element: return std::nullopt;
  }
  return std::nullopt;
}

FeFunction::FeFunction(SpacePtr s, std::vector<double> c) : space(std::move(s)), coefficients(std::move(c)) {
  if (static_cast<int>(coefficients.size()) != space->n_dofs()) {
    throw std::invalid_argument("coefficient length does not match the space");
  }
}

double FeFunction::value(int t, const std::array<double, 3>& lambda, int component) const {
  double phi[6];
  basis_values(space->family(), lambda, phi);
  const auto dofs = space->element_dofs(t);
  double sum = 0.0;
  for (std::size_t i = 0; i < dofs.size(); ++i) sum += phi[i] * coefficients[space->dof(component, dofs[i])];
  return sum;
}

Vec2 FeFunction::vector_value(int t, const std::array<double, 3>& lambda) const {
  return {value(t, lambda, 0), space->components() > 1 ? value(t, lambda, 1) : 0.0};
}

FeFunction linear_combination(double a, const FeFunction& x, double b, const FeFunction& y) {
  if (x.space != y.space) throw std::invalid_argument("linear_combination on different spaces");
  FeFunction out(x.space);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

bool all_finite(const FeFunction& f) {
  for (double c : f.coefficients) {
    if (!std::isfinite(c)) return false;
  }
  return true;
}

}  // namespace mhduq::fem
