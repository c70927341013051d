#include "mhduq/schemes/output.hpp"

#include <fstream>
#include <iomanip>
#include <stdexcept>

#include "mhduq/elsasser/transform.hpp"
#include "mhduq/mesh/vtk.hpp"
#include "mhduq/stochastic/ensemble.hpp"

namespace mhduq::schemes {

void write_energy_csv(std::ostream& out, const RunResult& result) {
  out << "t";
  const std::size_t nj = result.energy.empty() ? 0 : result.energy.front().size();
  for (std::size_t j = 0; j < nj; ++j) out << ",E_" << j + 1;
  out << ",mean_energy,mean_kinetic_energy\n";
  out << std::setprecision(12);
  for (std::size_t n = 0; n < result.energy.size(); ++n) {
    out << result.times[n];
    for (double e : result.energy[n]) out << ',' << e;
    out << ',' << result.mean_energy[n] << ',' << result.mean_kinetic_energy[n] << '\n';
  }
}

void write_energy_csv(const std::filesystem::path& path, const RunResult& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_energy_csv(out, result);
}

void write_snapshot(const std::filesystem::path& path, const EnsembleState& state, Algorithm algorithm,
                    const Discretization& disc, double s) {
  const auto v = stochastic::ensemble_mean(primary_v(state, algorithm));
  const auto w = stochastic::ensemble_mean(primary_w(state, algorithm));
  const auto [u, b] = elsasser::from_elsasser(v, w, s);
  // P2 numbers the vertex dofs first, so vertex values are read directly.
  const int nvert = disc.mesh->n_vertices();
  const int ns = disc.velocity->n_scalar_dofs();
  std::vector<Vec2> uv(nvert), bv(nvert);
  std::vector<double> speed(nvert), bmag(nvert);
  for (int i = 0; i < nvert; ++i) {
    uv[i] = {u[i], u[ns + i]};
    bv[i] = {b[i], b[ns + i]};
    speed[i] = norm(uv[i]);
    bmag[i] = norm(bv[i]);
  }
  mesh::VtkPointData data;
  data.vectors = {{"u", uv}, {"B", bv}};
  data.scalars = {{"speed", speed}, {"B_magnitude", bmag}};
  mesh::write_vtk(path, *disc.mesh, data);
}

}  // namespace mhduq::schemes
