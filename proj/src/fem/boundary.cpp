#include "mhduq/fem/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mhduq::fem {

DirichletBc::DirichletBc(SpacePtr space, std::vector<DirichletCondition> conditions)
    : space_(std::move(space)), conditions_(std::move(conditions)) {
  if (space_->components() != 2) throw std::invalid_argument("DirichletBc expects a vector space");
  for (const auto& c : conditions_) {
    if (c.tag != mesh::BoundaryTag::all && !space_->mesh().has_tag(c.tag)) {
      throw std::invalid_argument("boundary tag '" + std::string(mesh::to_string(c.tag)) + "' not present in mesh");
    }
  }
  for (int sd = 0; sd < space_->n_scalar_dofs(); ++sd) {
    const auto tag = space_->boundary_tag(sd);
    if (!tag) continue;
    for (std::size_t k = 0; k < conditions_.size(); ++k) {
      if (mesh::tag_matches(*tag, conditions_[k].tag)) {
        scalar_dofs_.push_back(sd);
        condition_of_.push_back(static_cast<int>(k));
        break;
      }
    }
  }
  for (int c = 0; c < 2; ++c)
    for (int sd : scalar_dofs_) dofs_.push_back(space_->dof(c, sd));
}

std::vector<double> DirichletBc::values(double t) const {
  const std::size_t n = scalar_dofs_.size();
  std::vector<double> out(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 g = conditions_[condition_of_[k]].g(t, space_->node(scalar_dofs_[k]));
    out[k] = g[0];
    out[n + k] = g[1];
  }
  return out;
}

void DirichletBc::apply(std::vector<double>& target, double t, int offset) const {
  const auto vals = values(t);
  for (std::size_t k = 0; k < dofs_.size(); ++k) target[offset + dofs_[k]] = vals[k];
}

void DirichletBc::apply(std::vector<std::vector<double>>& targets, double t, int offset) const {
  const auto vals = values(t);
  for (auto& target : targets)
    for (std::size_t k = 0; k < dofs_.size(); ++k) target[offset + dofs_[k]] = vals[k];
}

std::vector<int> normal_component_dofs(const FeSpace& space, mesh::BoundaryTag selector) {
  if (space.components() != 2) throw std::invalid_argument("normal_component_dofs expects a vector space");
  const auto& m = space.mesh();
  // Normal axis of a boundary edge: 0 for vertical edges (normal along x), 1 for horizontal.
  auto normal_axis = [&](int be) {
    const auto& e = m.boundary_edges()[be];
    const Point& a = m.vertex(e.vertices[0]);
    const Point& b = m.vertex(e.vertices[1]);
    const double len = distance(a, b);
    if (std::abs(a.y - b.y) <= 1e-12 * len) return 1;
    if (std::abs(a.x - b.x) <= 1e-12 * len) return 0;
    throw MeshError("normal-component constraint needs axis-aligned boundary edges");
  };
  std::vector<int> out;
  for (int sd = 0; sd < space.n_scalar_dofs(); ++sd) {
    const DofEntity& ent = space.entity(sd);
    bool axis[2] = {false, false};
    if (ent.kind == DofEntity::Kind::vertex) {
      for (int be : m.vertex_boundary_edges(ent.index)) {
        if (mesh::tag_matches(m.boundary_edges()[be].tag, selector)) axis[normal_axis(be)] = true;
      }
    } else if (ent.kind == DofEntity::Kind::edge) {
      const int be = m.boundary_edge_of(ent.index);
      if (be >= 0 && mesh::tag_matches(m.boundary_edges()[be].tag, selector)) axis[normal_axis(be)] = true;
    }
    for (int c = 0; c < 2; ++c)
      if (axis[c]) out.push_back(space.dof(c, sd));
  }
  std::sort(out.begin(), out.end());
  return out;
}

void constrain_rows(linalg::SparseMatrix& a, const std::vector<int>& rows, int offset) {
  const auto& rp = a.row_ptr();
  const auto& ci = a.col_idx();
  auto& v = a.values();
  for (int r0 : rows) {
    const int r = r0 + offset;
    bool has_diag = false;
    for (int k = rp[r]; k < rp[r + 1]; ++k) {
      if (ci[k] == r) {
        v[k] = 1.0;
        has_diag = true;
      } else {
        v[k] = 0.0;
      }
    }
    if (!has_diag) throw std::invalid_argument("constrain_rows: diagonal entry not stored in row " + std::to_string(r));
  }
}

void zero_entries(std::vector<double>& target, const std::vector<int>& rows, int offset) {
  for (int r : rows) target[offset + r] = 0.0;
}

}  // namespace mhduq::fem
