#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "mhduq/mesh/tri_mesh.hpp"

namespace mhduq::mesh {

struct VtkPointData {
  std::vector<std::pair<std::string, std::vector<double>>> scalars;
  std::vector<std::pair<std::string, std::vector<Vec2>>> vectors;
};

/// Legacy ASCII VTK (UNSTRUCTURED_GRID) with optional per-vertex fields.
void write_vtk(const std::filesystem::path& path, const TriMesh& mesh, const VtkPointData& data = {});

}  // namespace mhduq::mesh
