#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "mhduq/fem/coefficient.hpp"
#include "mhduq/fem/fe_space.hpp"
#include "mhduq/fem/field_eval.hpp"
#include "mhduq/fem/quadrature.hpp"
#include "mhduq/linalg/sparse_matrix.hpp"

namespace mhduq::fem {

// ============================================================================
// Bilinear forms
// ============================================================================

/// (u, chi)
struct Mass {};
/// (kappa grad u, grad chi), componentwise for vector spaces.
struct Stiffness {
  Coefficient kappa = Coefficient::constant(1.0);
};
/// (div u, div chi)
struct GradDiv {};
/// (wind . grad u, chi), plain trilinear form without skew-symmetrization.
struct Convection {
  FeFunction wind;
};
/// (2 scale l_sq grad u, grad chi); with scale = mu * dt this is (2 nu_T grad u, grad chi).
struct EddyViscosity {
  Coefficient l_sq;
  double scale = 1.0;
};
/// (div u, zeta): rows are pressure test functions, columns velocity trial dofs.
struct Divergence {};

using OperatorKind = std::variant<Mass, Stiffness, GradDiv, Convection, EddyViscosity, Divergence>;

/// Assembles the matrix with entries a(phi_j, psi_i): rows index `test`, columns `trial`.
/// Sampled coefficients must be tabulated on triangle_rule(degree).
linalg::SparseMatrix assemble_operator(const OperatorKind& kind, const FeSpace& trial, const FeSpace& test,
                                       int degree = kAssemblyDegree);

/// Fused momentum operator
///   mass (u, chi) + (kappa grad u, grad chi) + (wind . grad u, chi) + graddiv (div u, div chi)
/// on one vector space. The sparsity pattern and scatter map are computed once.
struct MomentumTerms {
  double mass = 0.0;
  double diffusion = 0.0;                         ///< constant part of kappa
  const std::vector<double>* diffusion_field = nullptr;  ///< added to kappa, sampled at rule points
  const std::vector<Vec2>* wind = nullptr;        ///< sampled at rule points; null means no convection
  double graddiv = 0.0;
};

class MomentumAssembler {
 public:
  explicit MomentumAssembler(SpacePtr space, int degree = kAssemblyDegree);

  const FeSpace& space() const { return *space_; }
  const QuadratureRule& rule() const { return table_.rule(); }
  const linalg::SparseMatrix& pattern() const { return pattern_; }

  linalg::SparseMatrix assemble(const MomentumTerms& terms) const;

 private:
  SpacePtr space_;
  BasisTable table_;
  linalg::SparseMatrix pattern_;
  std::vector<int> scatter_;  ///< per element, (2 n_local)^2 storage positions
};

// ============================================================================
// Linear forms
// ============================================================================

/// Right-hand side (f, chi) + (F, grad chi) on a vector space, with f and F
/// sampled at the rule points (layout t * n_points + q).
std::vector<double> assemble_linear_form(const FeSpace& test, const QuadratureRule& rule,
                                         const std::vector<Vec2>& f, const std::vector<Mat2>* big_f = nullptr);

/// (f(t, .), chi) on a vector space.
std::vector<double> assemble_load(const VectorFunction& f, double t, const FeSpace& test,
                                  int degree = kAssemblyDegree);
/// (g(t, .), zeta) on a scalar space.
std::vector<double> assemble_load(const ScalarFunction& g, double t, const FeSpace& test,
                                  int degree = kAssemblyDegree);

}  // namespace mhduq::fem
