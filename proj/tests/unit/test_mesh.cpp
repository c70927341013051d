#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mhduq/common/types.hpp"
#include "mhduq/mesh/generators.hpp"
#include "mhduq/mesh/vtk.hpp"

using namespace mhduq;
using mesh::BoundaryTag;

namespace {

double tagged_length(const mesh::TriMesh& m, BoundaryTag tag) {
  double len = 0.0;
  for (const auto& e : m.boundary_edges())
    if (e.tag == tag) len += distance(m.vertex(e.vertices[0]), m.vertex(e.vertices[1]));
  return len;
}

}  // namespace

TEST_CASE("structured square has 2n^2 triangles and (n+1)^2 vertices") {
  for (int n : {1, 3, 8}) {
    const auto m = mesh::generate_square(n);
    CHECK(m.n_triangles() == 2 * n * n);
    CHECK(m.n_vertices() == (n + 1) * (n + 1));
    // Euler: V - E + F = 1 for a disc.
    CHECK(m.n_vertices() - m.n_edges() + m.n_triangles() == 1);
    CHECK(m.total_area() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.h() == doctest::Approx(std::sqrt(2.0) / n));
    CHECK(tagged_length(m, BoundaryTag::wall) == doctest::Approx(4.0));
  }
}

TEST_CASE("barycentric refinement triples triangles and keeps the area") {
  const auto base = mesh::generate_square(4, {-1, -1}, {1, 1});
  const auto fine = mesh::barycentric_refine(base);
  CHECK(fine.n_triangles() == 3 * base.n_triangles());
  CHECK(fine.n_vertices() == base.n_vertices() + base.n_triangles());
  CHECK(fine.total_area() == doctest::Approx(4.0));
  CHECK(fine.boundary_edges().size() == base.boundary_edges().size());
  for (int t = 0; t < fine.n_triangles(); ++t) CHECK(fine.signed_area(t) > 0.0);
}

TEST_CASE("step channel geometry and tags") {
  const auto m = mesh::generate_step_channel(2);
  CHECK(m.total_area() == doctest::Approx(400.0 - 1.0));
  CHECK(tagged_length(m, BoundaryTag::inflow) == doctest::Approx(10.0));
  CHECK(tagged_length(m, BoundaryTag::outflow) == doctest::Approx(10.0));
  // Walls: top and bottom (2 x 40) plus the two vertical step faces.
  CHECK(tagged_length(m, BoundaryTag::wall) == doctest::Approx(82.0));
  for (const auto& v : m.vertices()) CHECK_FALSE((v.x > 5.0 + 1e-12 && v.x < 6.0 - 1e-12 && v.y < 1.0 - 1e-12));
}

TEST_CASE("retagging marks the cavity lid") {
  const auto m = mesh::retag_boundary(mesh::generate_square(4, {-1, -1}, {1, 1}),
                                      [](const Point& x, BoundaryTag old) { return x.y > 0.999 ? BoundaryTag::lid : old; });
  CHECK(tagged_length(m, BoundaryTag::lid) == doctest::Approx(2.0));
  CHECK(tagged_length(m, BoundaryTag::wall) == doctest::Approx(6.0));
  CHECK(m.has_tag(BoundaryTag::lid));
  // Lid corners follow the strong-BC precedence, so they resolve to one tag.
  CHECK(m.vertex_tag(0).has_value());
  CHECK_FALSE(m.vertex_tag(12).has_value());  // interior vertex of the 5x5 grid
}

TEST_CASE("malformed meshes are rejected") {
  std::vector<Point> v{{0, 0}, {1, 0}, {0, 1}};
  std::vector<mesh::BoundaryEdge> b{{{0, 1}, BoundaryTag::wall}, {{1, 2}, BoundaryTag::wall}, {{2, 0}, BoundaryTag::wall}};
  CHECK_NOTHROW(mesh::TriMesh(v, {{0, 1, 2}}, b));
  CHECK_THROWS_AS(mesh::TriMesh(v, {{0, 2, 1}}, b), MeshError);   // clockwise
  CHECK_THROWS_AS(mesh::TriMesh(v, {{0, 1, 3}}, b), MeshError);   // bad index
  CHECK_THROWS_AS(mesh::TriMesh(v, {{0, 1, 2}}, {b[0], b[1]}), MeshError);  // boundary not covered
  CHECK_THROWS_AS(mesh::generate_square(0), std::invalid_argument);
}

TEST_CASE("tag names round-trip") {
  for (auto t : {BoundaryTag::inflow, BoundaryTag::outflow, BoundaryTag::wall, BoundaryTag::lid, BoundaryTag::all})
    CHECK(mesh::parse_boundary_tag(mesh::to_string(t)) == t);
  CHECK(mesh::tag_matches(BoundaryTag::lid, BoundaryTag::all));
  CHECK_FALSE(mesh::tag_matches(BoundaryTag::lid, BoundaryTag::wall));
}

TEST_CASE("legacy VTK output lists points, cells and fields") {
  const auto m = mesh::generate_square(2);
  mesh::VtkPointData data;
  data.scalars.push_back({"speed", std::vector<double>(m.n_vertices(), 1.5)});
  data.vectors.push_back({"u", std::vector<Vec2>(m.n_vertices(), Vec2{1.0, 0.0})});
  const auto path = std::filesystem::temp_directory_path() / "mhduq_mesh_test.vtk";
  mesh::write_vtk(path, m, data);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  CHECK(text.rfind("# vtk DataFile Version", 0) == 0);
  CHECK(text.find("POINTS 9") != std::string::npos);
  CHECK(text.find("CELLS 8 32") != std::string::npos);
  CHECK(text.find("SCALARS speed") != std::string::npos);
  CHECK(text.find("VECTORS u") != std::string::npos);
  std::filesystem::remove(path);
}
