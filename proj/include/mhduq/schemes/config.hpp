#pragma once

#include <string_view>

#include "mhduq/linalg/iterative.hpp"

namespace mhduq::schemes {

enum class Algorithm { coupled, spp };
/// Taylor-Hood (P2, P1) or Scott-Vogelius (P2, P1disc).
enum class ElementPair { taylor_hood, scott_vogelius };
enum class SolverKind { direct, iterative };
/// Normal-component data of the projected field: zero, or the momentum field's boundary value.
enum class ProjectionBoundary { zero_normal, data_normal };

std::string_view to_string(Algorithm a);
std::string_view to_string(ElementPair p);
std::string_view to_string(SolverKind k);
std::string_view to_string(ProjectionBoundary b);
Algorithm parse_algorithm(std::string_view name);
ElementPair parse_element_pair(std::string_view name);
SolverKind parse_solver_kind(std::string_view name);
ProjectionBoundary parse_projection_boundary(std::string_view name);

struct SolverSettings {
  SolverKind kind = SolverKind::direct;
  /// Used for the momentum sub-problems when kind == iterative; saddle systems stay direct.
  linalg::IterativeOptions iterative;
};

/// Time stepping and stabilization parameters shared by both schemes.
struct SchemeConfig {
  double dt = 0.1;
  double T = 1.0;
  double gamma = 0.0;  ///< grad-div parameter
  double mu = 1.0;     ///< eddy-viscosity scale
  double s = 1.0;      ///< coupling coefficient
  ElementPair pair = ElementPair::taylor_hood;
  /// Adds gamma (div u, div chi) to the coupled scheme's momentum forms.
  bool coupled_graddiv = true;
  SolverSettings solver;
  ProjectionBoundary projection_boundary = ProjectionBoundary::zero_normal;
  /// Checks the projection invariants after every Step 2/4.
  bool monitor_projection = true;
  /// Records the per-realization stability functional every step.
  bool monitor_energy = false;

  /// M = T / dt; throws unless M is a positive integer to 1e-12 T.
  int steps() const;
  void validate() const;
};

}  // namespace mhduq::schemes
