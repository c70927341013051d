#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "mhduq/harness/config_file.hpp"
#include "mhduq/harness/convergence_table.hpp"
#include "mhduq/mesh/tri_mesh.hpp"
#include "mhduq/schemes/transient.hpp"
#include "mhduq/stochastic/plan.hpp"

namespace mhduq::harness {

// ============================================================================
// Meshes and plans
// ============================================================================

/// Unit square with n cells per side, optionally barycentric-refined.
std::shared_ptr<const mesh::TriMesh> square_mesh(int n, bool barycentric);
/// (-1,1)^2 with the top side tagged `lid`.
std::shared_ptr<const mesh::TriMesh> cavity_mesh(int n, bool barycentric);
std::shared_ptr<const mesh::TriMesh> channel_mesh(int resolution, bool barycentric);

stochastic::StochasticPlan mms_plan(const ExperimentSpec& spec);
stochastic::StochasticPlan channel_plan(const ExperimentSpec& spec);
stochastic::StochasticPlan cavity_plan(const ExperimentSpec& spec);

/// `output_dir` below $MHDUQ_OUTPUT_ROOT when that is set and the directory is relative.
std::filesystem::path resolve_output_dir(const ExperimentSpec& spec);

// ============================================================================
// Convergence studies
// ============================================================================

struct StudyResult {
  ConvergenceTable table{"", {}};
  bool invariants_ok = true;
  double max_projection_ratio = 0.0;
  double max_div_ratio = 0.0;
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;
};

/// Coupled vs spp ensemble-mean gap in L^2(0,T;H^1) for each gamma of the ladder.
StudyResult run_gamma_study(const ExperimentSpec& spec, bool write_outputs = true);
/// Error against the exact ensemble mean for dt = T / k over the divisor ladder.
StudyResult run_temporal_study(const ExperimentSpec& spec, bool write_outputs = true);
/// Error against the exact ensemble mean for h = 1 / n over the mesh ladder.
StudyResult run_spatial_study(const ExperimentSpec& spec, bool write_outputs = true);

// ============================================================================
// Benchmarks
// ============================================================================

struct BenchmarkRun {
  double s = 0.0;
  schemes::Algorithm algorithm = schemes::Algorithm::spp;
  schemes::RunResult result;
};

struct BenchmarkResult {
  std::vector<BenchmarkRun> runs;
  /// max over s and n of |E_coupled - E_spp| / max_n E_coupled (0 without both algorithms).
  double max_energy_gap = 0.0;
  bool invariants_ok = true;
  std::vector<std::string> warnings;
  /// Channel only: late-time ensemble-mean volume flux through inflow and outflow.
  double inflow_flux = 0.0;
  double outflow_flux = 0.0;
  double wall_seconds = 0.0;

  /// Final weighted mean energy of `algorithm` per s, in s_values order.
  std::vector<double> final_energies(schemes::Algorithm algorithm) const;
};

BenchmarkResult run_channel(const ExperimentSpec& spec, bool write_outputs = true);
BenchmarkResult run_cavity(const ExperimentSpec& spec, bool write_outputs = true);

/// Integral of u . n over the boundary edges with the given tag (outward normal).
double boundary_flux(const fem::FeFunction& u, mesh::BoundaryTag tag);

}  // namespace mhduq::harness
