#pragma once

#include <functional>
#include <utility>

#include "mhduq/common/types.hpp"
#include "mhduq/fem/fe_space.hpp"

namespace mhduq::elsasser {

/// Coupling coefficient s > 0 of the Lorentz force.
struct CouplingParams {
  double s = 1.0;

  explicit CouplingParams(double coupling);
  double sqrt_s() const;
};

/// v = u + sqrt(s) B, w = u - sqrt(s) B
std::pair<Vec2, Vec2> to_elsasser(const Vec2& u, const Vec2& b, double s);
/// u = (v + w) / 2, B = (v - w) / (2 sqrt(s))
std::pair<Vec2, Vec2> from_elsasser(const Vec2& v, const Vec2& w, double s);

std::pair<fem::FeFunction, fem::FeFunction> to_elsasser(const fem::FeFunction& u, const fem::FeFunction& b, double s);
std::pair<fem::FeFunction, fem::FeFunction> from_elsasser(const fem::FeFunction& v, const fem::FeFunction& w,
                                                          double s);
std::pair<VectorFunction, VectorFunction> to_elsasser(VectorFunction u, VectorFunction b, double s);

/// 2D curl of a scalar potential from its gradient: (dg/dx2, -dg/dx1).
inline Vec2 curl_from_gradient(const Vec2& grad_g) { return {grad_g[1], -grad_g[0]}; }

/// f1 = f + sqrt(s) curl g, f2 = f - sqrt(s) curl g, with g given through its gradient.
std::pair<Vec2, Vec2> forcing_transform(const Vec2& f, const Vec2& grad_g, double s);
std::pair<VectorFunction, VectorFunction> forcing_transform(VectorFunction f, VectorFunction grad_g, double s);

}  // namespace mhduq::elsasser
