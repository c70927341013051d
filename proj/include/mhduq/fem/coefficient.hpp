#pragma once

#include <functional>
#include <vector>

#include "mhduq/common/types.hpp"

namespace mhduq::fem {

/// Spatial coefficient evaluated at assembly quadrature points.
///
/// Three representations: a constant, a pure function of x, or values sampled
/// per (triangle, quadrature point) laid out as t * points_per_element + q.
class Coefficient {
 public:
  Coefficient() = default;

  static Coefficient constant(double value);
  static Coefficient function(std::function<double(const Point&)> f);
  static Coefficient sampled(std::vector<double> values, int points_per_element);

  double at(int t, int q, const Point& x) const {
    switch (kind_) {
      case Kind::constant: return value_;
      case Kind::function: return fn_(x);
      case Kind::sampled: return samples_[static_cast<std::size_t>(t) * ppe_ + q];
    }
    return 0.0;
  }

  bool is_constant() const { return kind_ == Kind::constant; }
  bool is_sampled() const { return kind_ == Kind::sampled; }
  double constant_value() const { return value_; }
  int points_per_element() const { return ppe_; }
  const std::vector<double>& samples() const { return samples_; }

 private:
  enum class Kind { constant, function, sampled };
  Kind kind_ = Kind::constant;
  double value_ = 0.0;
  std::function<double(const Point&)> fn_;
  std::vector<double> samples_;
  int ppe_ = 0;
};

}  // namespace mhduq::fem
