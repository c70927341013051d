#include "mhduq/mesh/generators.hpp"

#include <algorithm>
#include <map>

namespace mhduq::mesh {
namespace {

// Edges used by exactly one triangle, oriented as in their triangle.
std::vector<std::array<int, 2>> boundary_of(const std::vector<std::array<int, 3>>& triangles) {
  std::map<std::pair<int, int>, std::pair<int, std::array<int, 2>>> uses;
  for (const auto& tri : triangles) {
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k];
      const int b = tri[(k + 1) % 3];
      auto key = std::minmax(a, b);
      auto& entry = uses[{key.first, key.second}];
      ++entry.first;
      entry.second = {a, b};
    }
  }
  std::vector<std::array<int, 2>> out;
  for (const auto& [key, entry] : uses) {
    if (entry.first == 1) out.push_back(entry.second);
  }
  return out;
}

Point midpoint(const Point& a, const Point& b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

}  // namespace

TriMesh generate_square(int n, Point lo, Point hi) {
  if (n < 1) throw MeshError("generate_square needs n >= 1");
  if (!(hi.x > lo.x) || !(hi.y > lo.y)) throw MeshError("degenerate square corners");

  std::vector<Point> vertices;
  vertices.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      // Pin the last node exactly to the corner to keep the area identity tight.
      const double x = i == n ? hi.x : lo.x + (hi.x - lo.x) * i / n;
      const double y = j == n ? hi.y : lo.y + (hi.y - lo.y) * j / n;
      vertices.push_back({x, y});
    }
  }
  auto id = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::array<int, 3>> triangles;
  triangles.reserve(2 * static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      triangles.push_back({a, b, c});
      triangles.push_back({a, c, d});
    }
  }
  std::vector<BoundaryEdge> boundary;
  for (const auto& e : boundary_of(triangles)) boundary.push_back({e, BoundaryTag::wall});
  return TriMesh(std::move(vertices), std::move(triangles), std::move(boundary));
}

TriMesh generate_step_channel(int resolution) {
  if (resolution < 1) throw MeshError("generate_step_channel needs resolution >= 1");
  constexpr double length = 40.0;
  constexpr double height = 10.0;
  const int nx = 40 * resolution;
  const int ny = 10 * resolution;
  const double dx = 1.0 / resolution;

  auto in_step = [](double cx, double cy) { return cx > 5.0 && cx < 6.0 && cy > 0.0 && cy < 1.0; };

  std::vector<int> index((nx + 1) * (ny + 1), -1);
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;
  auto vertex = [&](int i, int j) {
    int& slot = index[j * (nx + 1) + i];
    if (slot < 0) {
      slot = static_cast<int>(vertices.size());
      vertices.push_back({i == nx ? length : i * dx, j == ny ? height : j * dx});
    }
    return slot;
  };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (in_step((i + 0.5) * dx, (j + 0.5) * dx)) continue;
      const int a = vertex(i, j), b = vertex(i + 1, j), c = vertex(i + 1, j + 1), d = vertex(i, j + 1);
      triangles.push_back({a, b, c});
      triangles.push_back({a, c, d});
    }
  }
  const double tol = 1e-9;
  std::vector<BoundaryEdge> boundary;
  for (const auto& e : boundary_of(triangles)) {
    const Point m = midpoint(vertices[e[0]], vertices[e[1]]);
    BoundaryTag tag = BoundaryTag::wall;
    if (std::abs(m.x) < tol) tag = BoundaryTag::inflow;
    else if (std::abs(m.x - length) < tol) tag = BoundaryTag::outflow;
    boundary.push_back({e, tag});
  }
  return TriMesh(std::move(vertices), std::move(triangles), std::move(boundary));
}

TriMesh barycentric_refine(const TriMesh& mesh) {
  std::vector<Point> vertices = mesh.vertices();
  std::vector<std::array<int, 3>> triangles;
  triangles.reserve(3 * static_cast<std::size_t>(mesh.n_triangles()));
  for (const auto& tri : mesh.triangles()) {
    const Point& a = mesh.vertex(tri[0]);
    const Point& b = mesh.vertex(tri[1]);
    const Point& c = mesh.vertex(tri[2]);
    const int center = static_cast<int>(vertices.size());
    vertices.push_back({(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0});
    triangles.push_back({tri[0], tri[1], center});
    triangles.push_back({tri[1], tri[2], center});
    triangles.push_back({tri[2], tri[0], center});
  }
  return TriMesh(std::move(vertices), std::move(triangles), mesh.boundary_edges());
}

TriMesh retag_boundary(const TriMesh& mesh,
                       const std::function<BoundaryTag(const Point&, BoundaryTag)>& retag) {
  std::vector<BoundaryEdge> boundary = mesh.boundary_edges();
  for (auto& e : boundary) {
    e.tag = retag(midpoint(mesh.vertex(e.vertices[0]), mesh.vertex(e.vertices[1])), e.tag);
  }
  return TriMesh(mesh.vertices(), mesh.triangles(), std::move(boundary));
}

}  // namespace mhduq::mesh
