#include "mhduq/stochastic/kl_field.hpp"

#include <cmath>
#include <numbers>

namespace mhduq::stochastic {

KlField::KlField(KlParameters params) : params_(params) {
  if (params_.c <= 0.0 || params_.correlation_length <= 0.0 || params_.q < 1) {
    throw std::invalid_argument("KL field needs c > 0, l > 0 and q >= 1");
  }
}

double KlField::sqrt_xi(int j) const {
  const double l = params_.correlation_length;
  const double pi = std::numbers::pi;
  return std::sqrt(std::sqrt(pi) * l) * std::exp(-(j * pi * l) * (j * pi * l) / 8.0);
}

double KlField::psi(const Point& x, const std::vector<double>& y) const {
  if (static_cast<int>(y.size()) != dimension()) throw std::invalid_argument("KL parameter vector has wrong dimension");
  const double pi = std::numbers::pi;
  double value = params_.c + std::sqrt(std::sqrt(pi) * params_.correlation_length / 2.0) * y[0];
  for (int j = 1; j <= params_.q; ++j) {
    const double a = j * pi / 2.0;
    value += sqrt_xi(j) * (std::sin(a * x.x) * std::sin(a * x.y) * y[2 * j - 1] +
                           std::cos(a * x.x) * std::cos(a * x.y) * y[2 * j]);
  }
  return value;
}

std::pair<double, double> KlField::viscosity(const Point& x, const std::vector<double>& y) const {
  const double p = psi(x, y);
  return {params_.nu_scale * p, params_.nu_m_scale * p};
}

}  // namespace mhduq::stochastic
