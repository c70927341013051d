#include "mhduq/schemes/config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mhduq::schemes {

std::string_view to_string(Algorithm a) { return a == Algorithm::coupled ? "coupled" : "spp"; }

std::string_view to_string(ElementPair p) { return p == ElementPair::taylor_hood ? "taylor_hood" : "scott_vogelius"; }

std::string_view to_string(SolverKind k) { return k == SolverKind::direct ? "direct" : "iterative"; }

std::string_view to_string(ProjectionBoundary b) { return b == ProjectionBoundary::zero_normal ? "zero_normal" : "data_normal"; }

ProjectionBoundary parse_projection_boundary(std::string_view name) {
  if (name == "zero_normal") return ProjectionBoundary::zero_normal;
  if (name == "data_normal") return ProjectionBoundary::data_normal;
  throw std::invalid_argument("unknown projection boundary '" + std::string(name) + "'");
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "coupled") return Algorithm::coupled;
  if (name == "spp") return Algorithm::spp;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

ElementPair parse_element_pair(std::string_view name) {
  if (name == "taylor_hood" || name == "TH") return ElementPair::taylor_hood;
  if (name == "scott_vogelius" || name == "SV") return ElementPair::scott_vogelius;
  throw std::invalid_argument("unknown element pair '" + std::string(name) + "'");
}

SolverKind parse_solver_kind(std::string_view name) {
  if (name == "direct") return SolverKind::direct;
  if (name == "iterative") return SolverKind::iterative;
  throw std::invalid_argument("unknown solver kind '" + std::string(name) + "'");
}

int SchemeConfig::steps() const {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(T >= dt)) throw std::invalid_argument("T must be at least dt");
  const double m = std::round(T / dt);
  if (std::abs(T - m * dt) > 1e-12 * T) throw std::invalid_argument("T is not an integer multiple of dt");
  return static_cast<int>(m);
}

void SchemeConfig::validate() const {
  steps();
  if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
  if (mu < 0.0) throw std::invalid_argument("mu must be >= 0");
  if (!(s > 0.0)) throw std::invalid_argument("coupling s must be positive");
}

}  // namespace mhduq::schemes
