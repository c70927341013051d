#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mhduq/common/types.hpp"

namespace mhduq::mesh {

/// Named boundary segments. `all` is a selector matching every tag and is never
/// stored on an edge.
enum class BoundaryTag : std::uint8_t { inflow, outflow, wall, lid, all };

std::string_view to_string(BoundaryTag tag);
BoundaryTag parse_boundary_tag(std::string_view name);

/// True when `tag` is matched by `selector` (`all` matches everything).
inline bool tag_matches(BoundaryTag tag, BoundaryTag selector) {
  return selector == BoundaryTag::all || tag == selector;
}

/// Strong-BC precedence used at vertices shared by two differently tagged edges.
int tag_precedence(BoundaryTag tag);

struct BoundaryEdge {
  std::array<int, 2> vertices;
  BoundaryTag tag;
};

/// Conforming triangulation of a polygonal domain with tagged boundary edges.
///
/// Immutable after construction. The constructor validates orientation, the
/// edge-manifold property and complete boundary tagging, and derives the
/// unique edge list used by the P2 dof map.
class TriMesh {
 public:
  TriMesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles,
          std::vector<BoundaryEdge> boundary_edges);

  int n_vertices() const { return static_cast<int>(vertices_.size()); }
  int n_triangles() const { return static_cast<int>(triangles_.size()); }
  int n_edges() const { return static_cast<int>(edges_.size()); }

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<BoundaryEdge>& boundary_edges() const { return boundary_edges_; }
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }

  const Point& vertex(int v) const { return vertices_[v]; }
  const std::array<int, 3>& triangle(int t) const { return triangles_[t]; }

  /// Global edge ids of triangle t; local edge k joins local vertices k and (k+1)%3.
  const std::array<int, 3>& triangle_edges(int t) const { return triangle_edges_[t]; }

  /// Tag of edge e when it lies on the boundary.
  std::optional<BoundaryTag> edge_tag(int e) const;
  /// Tag of vertex v when it lies on the boundary, resolved by tag_precedence().
  std::optional<BoundaryTag> vertex_tag(int v) const;
  /// Boundary edge indices (into boundary_edges()) touching vertex v.
  const std::vector<int>& vertex_boundary_edges(int v) const { return vertex_boundary_edges_[v]; }
  /// Index into boundary_edges() for global edge e, or -1.
  int boundary_edge_of(int e) const { return edge_boundary_index_[e]; }

  double signed_area(int t) const;
  double total_area() const;
  /// Maximum triangle diameter.
  double h() const { return h_; }
  bool has_tag(BoundaryTag tag) const;

 private:
  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<BoundaryEdge> boundary_edges_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::array<int, 3>> triangle_edges_;
  std::vector<int> edge_boundary_index_;
  std::vector<std::vector<int>> vertex_boundary_edges_;
  double h_ = 0.0;
};

}  // namespace mhduq::mesh
