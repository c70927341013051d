#include "mhduq/elsasser/mms.hpp"

#include <cmath>

namespace mhduq::elsasser {

namespace {
Vec2 advect(const Vec2& wind, const Mat2& g) {
  return {wind[0] * g[0][0] + wind[1] * g[0][1], wind[0] * g[1][0] + wind[1] * g[1][1]};
}
}  // namespace

MmsSolution::MmsSolution(double k, double epsilon, double nu, double nu_m)
    : a_(1.0 + k * epsilon), nu_(nu), nu_m_(nu_m) {}

Vec2 MmsSolution::base(double sign, double t, const Point& x) {
  const double e = 1.0 + std::exp(t);
  return {std::cos(x.y) + sign * e * std::sin(x.y), std::sin(x.x) + sign * e * std::cos(x.x)};
}

Mat2 MmsSolution::base_grad(double sign, double t, const Point& x) {
  const double e = 1.0 + std::exp(t);
  Mat2 g{};
  g[0][1] = -std::sin(x.y) + sign * e * std::cos(x.y);
  g[1][0] = std::cos(x.x) - sign * e * std::sin(x.x);
  return g;
}

Vec2 MmsSolution::v(double t, const Point& x) const { return a_ * base(1.0, t, x); }
Vec2 MmsSolution::w(double t, const Point& x) const { return a_ * base(-1.0, t, x); }
double MmsSolution::q(double t, const Point& x) const { return a_ * (1.0 + std::exp(t)) * std::sin(x.x + x.y); }
double MmsSolution::r(double, const Point&) const { return 0.0; }

Mat2 MmsSolution::grad_v(double t, const Point& x) const {
  Mat2 g = base_grad(1.0, t, x);
  for (auto& row : g)
    for (double& c : row) c *= a_;
  return g;
}

Mat2 MmsSolution::grad_w(double t, const Point& x) const {
  Mat2 g = base_grad(-1.0, t, x);
  for (auto& row : g)
    for (double& c : row) c *= a_;
  return g;
}

Vec2 MmsSolution::grad_q(double t, const Point& x) const {
  const double c = a_ * (1.0 + std::exp(t)) * std::cos(x.x + x.y);
  return {c, c};
}

Vec2 MmsSolution::v_t(double t, const Point& x) const {
  const double et = std::exp(t);
  return {a_ * et * std::sin(x.y), a_ * et * std::cos(x.x)};
}

Vec2 MmsSolution::w_t(double t, const Point& x) const { return -1.0 * v_t(t, x); }

// Each component is an eigenfunction of the Laplacian with eigenvalue -1.
Vec2 MmsSolution::lap_v(double t, const Point& x) const { return -1.0 * v(t, x); }
Vec2 MmsSolution::lap_w(double t, const Point& x) const { return -1.0 * w(t, x); }

Vec2 MmsSolution::f1(double t, const Point& x) const {
  const double dp = 0.5 * (nu_ + nu_m_), dm = 0.5 * (nu_ - nu_m_);
  return v_t(t, x) + advect(w(t, x), grad_v(t, x)) - dp * lap_v(t, x) - dm * lap_w(t, x) + grad_q(t, x);
}

Vec2 MmsSolution::f2(double t, const Point& x) const {
  const double dp = 0.5 * (nu_ + nu_m_), dm = 0.5 * (nu_ - nu_m_);
  return w_t(t, x) + advect(v(t, x), grad_w(t, x)) - dp * lap_w(t, x) - dm * lap_v(t, x);
}

VectorFunction MmsSolution::v_function() const {
  return [self = *this](double t, const Point& x) { return self.v(t, x); };
}
VectorFunction MmsSolution::w_function() const {
  return [self = *this](double t, const Point& x) { return self.w(t, x); };
}
GradientFunction MmsSolution::grad_v_function() const {
  return [self = *this](double t, const Point& x) { return self.grad_v(t, x); };
}
GradientFunction MmsSolution::grad_w_function() const {
  return [self = *this](double t, const Point& x) { return self.grad_w(t, x); };
}
VectorFunction MmsSolution::f1_function() const {
  return [self = *this](double t, const Point& x) { return self.f1(t, x); };
}
VectorFunction MmsSolution::f2_function() const {
  return [self = *this](double t, const Point& x) { return self.f2(t, x); };
}

}  // namespace mhduq::elsasser
