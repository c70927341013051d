#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "mhduq/fem/quadrature.hpp"
#include "mhduq/mesh/tri_mesh.hpp"
#include "mhduq/stochastic/kl_field.hpp"

namespace mhduq::stochastic {

enum class FieldModel { constant_uniform, kl_field, mms_perturbation };

std::string_view to_string(FieldModel model);

/// The realization set: parameter points, weights and the viscosity model.
struct StochasticPlan {
  FieldModel model = FieldModel::constant_uniform;
  std::vector<std::vector<double>> points;  ///< y^j
  std::vector<double> weights;              ///< w^j, summing to 1
  std::vector<double> k;                    ///< perturbation multipliers k_j
  double epsilon = 0.0;
  std::vector<double> nu;    ///< per-realization constants (constant models)
  std::vector<double> nu_m;  ///< per-realization constants (constant models)
  KlParameters kl;           ///< used by the kl_field model
  std::uint64_t seed = 0;

  int size() const { return static_cast<int>(weights.size()); }
  /// Data amplitude 1 + k_j epsilon.
  double amplitude(int j) const { return 1.0 + k[j] * epsilon; }
};

/// k_j = (-1)^(j+1) 4 ceil(j/2) / N_sc for j = 1..N_sc (returned 0-based).
std::vector<double> perturbation_sequence(int n_sc);

/// N_sc i.i.d. draws nu_j ~ U(nu_bounds), nu_m_j ~ U(nu_m_bounds), equal weights.
StochasticPlan build_uniform_plan(int n_sc, double epsilon, std::array<double, 2> nu_bounds,
                                  std::array<double, 2> nu_m_bounds, std::uint64_t seed);
/// As build_uniform_plan, tagged as the manufactured-solution family.
StochasticPlan build_mms_plan(int n_sc, double epsilon, std::array<double, 2> nu_bounds,
                              std::array<double, 2> nu_m_bounds, std::uint64_t seed);
/// Clenshaw-Curtis Smolyak grid of the given level over [-sqrt 3, sqrt 3]^(2q+1).
StochasticPlan build_kl_plan(int level, const KlParameters& kl, double epsilon);
/// One realization at y = 0 (or the given constants) with unit weight.
StochasticPlan build_single_plan(double nu, double nu_m, double epsilon = 0.0);

/// sum_j w^j values_j
double qoi_expectation(const std::vector<double>& values, const StochasticPlan& plan);

/// Audit table: header line, then "j weight k nu nu_m y_1 ... y_N" per realization.
void write_plan_table(std::ostream& out, const StochasticPlan& plan);

// ============================================================================
// Viscosity fields at quadrature points
// ============================================================================

/// nu_j, nu_m,j and their equal-weight means/fluctuations sampled at the points
/// of `rule` on every triangle (layout t * n_points + q).
struct MaterializedViscosity {
  int points_per_element = 0;
  std::vector<std::vector<double>> nu, nu_m;
  std::vector<double> nu_bar, nu_m_bar;
  std::vector<std::vector<double>> nu_prime, nu_m_prime;
  double nu_bar_min = 0.0;
  double nu_m_bar_min = 0.0;
};

/// Throws NonPositiveField if nu or nu_m is <= 0 at any sampled point.
MaterializedViscosity materialize_viscosity(const StochasticPlan& plan, const mesh::TriMesh& mesh,
                                            const fem::QuadratureRule& rule);

}  // namespace mhduq::stochastic
