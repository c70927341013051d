#pragma once

#include "mhduq/fem/fe_space.hpp"
#include "mhduq/fem/quadrature.hpp"

namespace mhduq::fem {

enum class NormKind { L2, H1semi, Linf_nodal, divL2 };

double norm(const FeFunction& u, NormKind kind, int degree = kAssemblyDegree);
double l2_norm(const FeFunction& u, int degree = kAssemblyDegree);
double h1_seminorm(const FeFunction& u, int degree = kAssemblyDegree);
/// sqrt(L2^2 + H1semi^2)
double h1_norm(const FeFunction& u, int degree = kAssemblyDegree);
double div_l2_norm(const FeFunction& u, int degree = kAssemblyDegree);
double linf_nodal(const FeFunction& u);

/// (u, v) over the domain; both on the same space.
double l2_inner(const FeFunction& u, const FeFunction& v, int degree = kAssemblyDegree);

/// Integral and mean of a scalar field.
double integrate(const FeFunction& p, int degree = kAssemblyDegree);
/// Subtracts the domain mean, restoring the zero-mean pressure constraint.
void remove_mean(FeFunction& p);

// ============================================================================
// Errors against analytic fields (default high-degree rule)
// ============================================================================

double l2_error(const FeFunction& u, const VectorFunction& exact, double t, int degree = kErrorDegree);
double l2_error(const FeFunction& p, const ScalarFunction& exact, double t, int degree = kErrorDegree);
double h1_semi_error(const FeFunction& u, const GradientFunction& exact_grad, double t, int degree = kErrorDegree);

FeFunction interpolate(const VectorFunction& f, double t, SpacePtr space);
FeFunction interpolate(const ScalarFunction& f, double t, SpacePtr space);

}  // namespace mhduq::fem
