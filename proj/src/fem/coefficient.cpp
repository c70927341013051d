#include "mhduq/fem/coefficient.hpp"

namespace mhduq::fem {

Coefficient Coefficient::constant(double value) {
  Coefficient c;
  c.kind_ = Kind::constant;
  c.value_ = value;
  return c;
}

Coefficient Coefficient::function(std::function<double(const Point&)> f) {
  if (!f) throw std::invalid_argument("Coefficient::function needs a callable");
  Coefficient c;
  c.kind_ = Kind::function;
  c.fn_ = std::move(f);
  return c;
}

Coefficient Coefficient::sampled(std::vector<double> values, int points_per_element) {
  if (points_per_element <= 0 || values.size() % points_per_element != 0) {
    throw std::invalid_argument("sampled coefficient length is not a multiple of points_per_element");
  }
  Coefficient c;
  c.kind_ = Kind::sampled;
  c.samples_ = std::move(values);
  c.ppe_ = points_per_element;
  return c;
}

}  // namespace mhduq::fem
