#include "mhduq/mesh/vtk.hpp"

#include <fstream>
#include <iomanip>

namespace mhduq::mesh {

void write_vtk(const std::filesystem::path& path, const TriMesh& mesh, const VtkPointData& data) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << std::setprecision(12);
  out << "# vtk DataFile Version 3.0\nmhduq\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.n_vertices() << " double\n";
  for (const auto& p : mesh.vertices()) out << p.x << ' ' << p.y << " 0\n";
  out << "CELLS " << mesh.n_triangles() << ' ' << 4 * mesh.n_triangles() << '\n';
  for (const auto& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << mesh.n_triangles() << '\n';
  for (int t = 0; t < mesh.n_triangles(); ++t) out << "5\n";

  if (data.scalars.empty() && data.vectors.empty()) return;
  out << "POINT_DATA " << mesh.n_vertices() << '\n';
  for (const auto& [name, values] : data.scalars) {
    if (static_cast<int>(values.size()) != mesh.n_vertices()) {
      throw std::invalid_argument("scalar field '" + name + "' has wrong length");
    }
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (double v : values) out << v << '\n';
  }
  for (const auto& [name, values] : data.vectors) {
    if (static_cast<int>(values.size()) != mesh.n_vertices()) {
      throw std::invalid_argument("vector field '" + name + "' has wrong length");
    }
    out << "VECTORS " << name << " double\n";
    for (const auto& v : values) out << v[0] << ' ' << v[1] << " 0\n";
  }
}

}  // namespace mhduq::mesh
