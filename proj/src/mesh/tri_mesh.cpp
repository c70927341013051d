#include "mhduq/mesh/tri_mesh.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace mhduq::mesh {

std::string_view to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::inflow: return "inflow";
    case BoundaryTag::outflow: return "outflow";
    case BoundaryTag::wall: return "wall";
    case BoundaryTag::lid: return "lid";
    case BoundaryTag::all: return "all";
  }
  return "unknown";
}

BoundaryTag parse_boundary_tag(std::string_view name) {
  for (auto tag : {BoundaryTag::inflow, BoundaryTag::outflow, BoundaryTag::wall, BoundaryTag::lid,
                   BoundaryTag::all}) {
    if (to_string(tag) == name) return tag;
  }
  throw std::invalid_argument("unknown boundary tag '" + std::string(name) + "'");
}

int tag_precedence(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::wall: return 4;
    case BoundaryTag::lid: return 3;
    case BoundaryTag::inflow: return 2;
    case BoundaryTag::outflow: return 1;
    case BoundaryTag::all: return 0;
  }
  return 0;
}

TriMesh::TriMesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles,
                 std::vector<BoundaryEdge> boundary_edges)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      boundary_edges_(std::move(boundary_edges)) {
  const int nv = n_vertices();
  if (triangles_.empty()) throw MeshError("mesh has no triangles");

  std::map<std::pair<int, int>, int> edge_ids;
  std::vector<int> edge_use;
  triangle_edges_.resize(triangles_.size());
  for (int t = 0; t < n_triangles(); ++t) {
    const auto& tri = triangles_[t];
    for (int v : tri) {
      if (v < 0 || v >= nv) throw MeshError("triangle references a missing vertex");
    }
    if (signed_area(t) <= 0.0) {
      throw MeshError("triangle " + std::to_string(t) + " is not counterclockwise");
    }
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k];
      const int b = tri[(k + 1) % 3];
      const auto key = std::minmax(a, b);
      auto [it, inserted] = edge_ids.try_emplace({key.first, key.second}, n_edges());
      if (inserted) {
        edges_.push_back({key.first, key.second});
        edge_use.push_back(0);
      }
      ++edge_use[it->second];
      triangle_edges_[t][k] = it->second;
      h_ = std::max(h_, distance(vertices_[a], vertices_[b]));
    }
  }

  edge_boundary_index_.assign(edges_.size(), -1);
  for (int i = 0; i < static_cast<int>(boundary_edges_.size()); ++i) {
    const auto& be = boundary_edges_[i];
    if (be.tag == BoundaryTag::all) throw MeshError("'all' is a selector, not an edge tag");
    const auto key = std::minmax(be.vertices[0], be.vertices[1]);
    auto it = edge_ids.find({key.first, key.second});
    if (it == edge_ids.end()) throw MeshError("boundary edge is not a mesh edge");
    if (edge_use[it->second] != 1) throw MeshError("tagged boundary edge is shared by two triangles");
    if (edge_boundary_index_[it->second] != -1) throw MeshError("boundary edge tagged twice");
    edge_boundary_index_[it->second] = i;
  }
  for (int e = 0; e < n_edges(); ++e) {
    if (edge_use[e] > 2) throw MeshError("edge shared by more than two triangles");
    if (edge_use[e] == 1 && edge_boundary_index_[e] == -1) {
      throw MeshError("untagged boundary edge " + std::to_string(e));
    }
  }

  vertex_boundary_edges_.assign(vertices_.size(), {});
  for (int i = 0; i < static_cast<int>(boundary_edges_.size()); ++i) {
    for (int v : boundary_edges_[i].vertices) vertex_boundary_edges_[v].push_back(i);
  }
}

std::optional<BoundaryTag> TriMesh::edge_tag(int e) const {
  const int b = edge_boundary_index_[e];
  if (b < 0) return std::nullopt;
  return boundary_edges_[b].tag;
}

std::optional<BoundaryTag> TriMesh::vertex_tag(int v) const {
  std::optional<BoundaryTag> best;
  for (int b : vertex_boundary_edges_[v]) {
    const BoundaryTag tag = boundary_edges_[b].tag;
    if (!best || tag_precedence(tag) > tag_precedence(*best)) best = tag;
  }
  return best;
}

double TriMesh::signed_area(int t) const {
  const auto& tri = triangles_[t];
  const Point& a = vertices_[tri[0]];
  const Point& b = vertices_[tri[1]];
  const Point& c = vertices_[tri[2]];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

double TriMesh::total_area() const {
  double sum = 0.0;
  for (int t = 0; t < n_triangles(); ++t) sum += signed_area(t);
  return sum;
}

bool TriMesh::has_tag(BoundaryTag tag) const {
  if (tag == BoundaryTag::all) return !boundary_edges_.empty();
  return std::any_of(boundary_edges_.begin(), boundary_edges_.end(),
                     [tag](const BoundaryEdge& e) { return e.tag == tag; });
}

}  // namespace mhduq::mesh
