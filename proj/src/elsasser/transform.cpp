#include "mhduq/elsasser/transform.hpp"

#include <cmath>

namespace mhduq::elsasser {

namespace {
double checked_sqrt(double s) {
  if (!(s > 0.0)) throw std::invalid_argument("coupling parameter s must be positive");
  return std::sqrt(s);
}
}  // namespace

CouplingParams::CouplingParams(double coupling) : s(coupling) { checked_sqrt(s); }

double CouplingParams::sqrt_s() const { return std::sqrt(s); }

std::pair<Vec2, Vec2> to_elsasser(const Vec2& u, const Vec2& b, double s) {
  const double r = checked_sqrt(s);
  return {u + r * b, u - r * b};
}

std::pair<Vec2, Vec2> from_elsasser(const Vec2& v, const Vec2& w, double s) {
  const double r = checked_sqrt(s);
  return {0.5 * (v + w), (0.5 / r) * (v - w)};
}

std::pair<fem::FeFunction, fem::FeFunction> to_elsasser(const fem::FeFunction& u, const fem::FeFunction& b, double s) {
  const double r = checked_sqrt(s);
  return {fem::linear_combination(1.0, u, r, b), fem::linear_combination(1.0, u, -r, b)};
}

std::pair<fem::FeFunction, fem::FeFunction> from_elsasser(const fem::FeFunction& v, const fem::FeFunction& w,
                                                          double s) {
  const double r = checked_sqrt(s);
  return {fem::linear_combination(0.5, v, 0.5, w), fem::linear_combination(0.5 / r, v, -0.5 / r, w)};
}

std::pair<VectorFunction, VectorFunction> to_elsasser(VectorFunction u, VectorFunction b, double s) {
  const double r = checked_sqrt(s);
  VectorFunction v = [u, b, r](double t, const Point& x) { return u(t, x) + r * b(t, x); };
  VectorFunction w = [u, b, r](double t, const Point& x) { return u(t, x) - r * b(t, x); };
  return {std::move(v), std::move(w)};
}

std::pair<Vec2, Vec2> forcing_transform(const Vec2& f, const Vec2& grad_g, double s) {
  const Vec2 c = checked_sqrt(s) * curl_from_gradient(grad_g);
  return {f + c, f - c};
}

std::pair<VectorFunction, VectorFunction> forcing_transform(VectorFunction f, VectorFunction grad_g, double s) {
  const double r = checked_sqrt(s);
  VectorFunction f1 = [f, grad_g, r](double t, const Point& x) { return f(t, x) + r * curl_from_gradient(grad_g(t, x)); };
  VectorFunction f2 = [f, grad_g, r](double t, const Point& x) { return f(t, x) - r * curl_from_gradient(grad_g(t, x)); };
  return {std::move(f1), std::move(f2)};
}

}  // namespace mhduq::elsasser
