#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace mhduq {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Two-component vector value (velocity, magnetic field, forcing).
using Vec2 = std::array<double, 2>;

/// Gradient of a vector field: g[c][d] = d u_c / d x_d.
using Mat2 = std::array<std::array<double, 2>, 2>;

inline Vec2 operator+(const Vec2& a, const Vec2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec2 operator*(double s, const Vec2& a) { return {s * a[0], s * a[1]}; }
inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm(const Vec2& a) { return std::hypot(a[0], a[1]); }

inline double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Time-dependent vector field f(t, x).
using VectorFunction = std::function<Vec2(double t, const Point& x)>;

/// Time-dependent scalar field g(t, x).
using ScalarFunction = std::function<double(double t, const Point& x)>;

/// Time-dependent gradient of a vector field.
using GradientFunction = std::function<Mat2(double t, const Point& x)>;

// ============================================================================
// Error types shared across modules
// ============================================================================

class MeshError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double best_residual, int iterations)
      : std::runtime_error(what), best_residual_(best_residual), iterations_(iterations) {}
  double best_residual() const { return best_residual_; }
  int iterations() const { return iterations_; }

 private:
  double best_residual_;
  int iterations_;
};

class NonPositiveField : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a time step produces NaN/Inf; carries the offending step and realization.
class SolutionBlowup : public std::runtime_error {
 public:
  SolutionBlowup(const std::string& what, int step, int realization)
      : std::runtime_error(what), step_(step), realization_(realization) {}
  int step() const { return step_; }
  int realization() const { return realization_; }

 private:
  int step_;
  int realization_;
};

}  // namespace mhduq
