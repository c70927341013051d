#pragma once

#include "mhduq/common/types.hpp"

namespace mhduq::elsasser {

/// Manufactured Elsasser solution of one realization, scaled by a = 1 + k epsilon:
///   v = a (cos x2 + E sin x2, sin x1 + E cos x1),
///   w = a (cos x2 - E sin x2, sin x1 - E cos x1),
///   q = a E sin(x1 + x2),  r = 0,   E = 1 + e^t,
/// with forcings
///   f1 = v_t + w.grad v - (nu + nu_m)/2 lap v - (nu - nu_m)/2 lap w + grad q,
///   f2 = w_t + v.grad w - (nu + nu_m)/2 lap w - (nu - nu_m)/2 lap v + grad r.
class MmsSolution {
 public:
  MmsSolution(double k, double epsilon, double nu, double nu_m);

  double amplitude() const { return a_; }
  double nu() const { return nu_; }
  double nu_m() const { return nu_m_; }

  Vec2 v(double t, const Point& x) const;
  Vec2 w(double t, const Point& x) const;
  double q(double t, const Point& x) const;
  double r(double t, const Point& x) const;
  Mat2 grad_v(double t, const Point& x) const;
  Mat2 grad_w(double t, const Point& x) const;
  Vec2 grad_q(double t, const Point& x) const;
  Vec2 v_t(double t, const Point& x) const;
  Vec2 w_t(double t, const Point& x) const;
  Vec2 lap_v(double t, const Point& x) const;
  Vec2 lap_w(double t, const Point& x) const;

  Vec2 f1(double t, const Point& x) const;
  Vec2 f2(double t, const Point& x) const;

  VectorFunction v_function() const;
  VectorFunction w_function() const;
  GradientFunction grad_v_function() const;
  GradientFunction grad_w_function() const;
  VectorFunction f1_function() const;
  VectorFunction f2_function() const;

 private:
  /// Unscaled field with sign +1 (v) or -1 (w) on the E part.
  static Vec2 base(double sign, double t, const Point& x);
  static Mat2 base_grad(double sign, double t, const Point& x);

  double a_;
  double nu_;
  double nu_m_;
};

}  // namespace mhduq::elsasser
