#pragma once

#include <filesystem>
#include <iosfwd>

#include "mhduq/schemes/transient.hpp"

namespace mhduq::schemes {

/// CSV "t,E_1,...,E_N,mean_energy,mean_kinetic_energy" with E_j = 1/2 ||u_j||.
void write_energy_csv(std::ostream& out, const RunResult& result);
void write_energy_csv(const std::filesystem::path& path, const RunResult& result);

/// Legacy VTK of the ensemble means: u, B (reconstructed with coupling s), speed and |B| at vertices.
void write_snapshot(const std::filesystem::path& path, const EnsembleState& state, Algorithm algorithm,
                    const Discretization& disc, double s);

}  // namespace mhduq::schemes
