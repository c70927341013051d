#include "mhduq/stochastic/plan.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <string>

#include "mhduq/fem/field_eval.hpp"
#include "mhduq/stochastic/collocation.hpp"

namespace mhduq::stochastic {

std::string_view to_string(FieldModel model) {
  switch (model) {
    case FieldModel::constant_uniform: return "constant_uniform";
    case FieldModel::kl_field: return "kl_field";
    case FieldModel::mms_perturbation: return "mms_perturbation";
  }
  return "unknown";
}

std::vector<double> perturbation_sequence(int n_sc) {
  if (n_sc < 1) throw std::invalid_argument("N_sc must be >= 1");
  std::vector<double> k(n_sc);
  for (int j = 1; j <= n_sc; ++j) {
    const double sign = j % 2 == 1 ? 1.0 : -1.0;
    k[j - 1] = sign * 4.0 * ((j + 1) / 2) / n_sc;
  }
  return k;
}

StochasticPlan build_uniform_plan(int n_sc, double epsilon, std::array<double, 2> nu_bounds,
                                  std::array<double, 2> nu_m_bounds, std::uint64_t seed) {
  if (n_sc < 1) throw std::invalid_argument("N_sc must be >= 1");
  for (const auto& b : {nu_bounds, nu_m_bounds}) {
    if (!(b[0] > 0.0) || !(b[1] >= b[0])) throw std::invalid_argument("viscosity bounds must be positive and ordered");
  }
  StochasticPlan plan;
  plan.model = FieldModel::constant_uniform;
  plan.epsilon = epsilon;
  plan.seed = seed;
  plan.k = perturbation_sequence(n_sc);
  plan.weights.assign(n_sc, 1.0 / n_sc);
  // 53-bit mantissa mapping keeps draws identical across standard libraries.
  std::mt19937_64 gen(seed);
  auto uniform = [&gen](double a, double b) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return a + (b - a) * u;
  };
  for (int j = 0; j < n_sc; ++j) {
    const double nu = uniform(nu_bounds[0], nu_bounds[1]);
    const double nu_m = uniform(nu_m_bounds[0], nu_m_bounds[1]);
    plan.nu.push_back(nu);
    plan.nu_m.push_back(nu_m);
    plan.points.push_back({nu, nu_m});
  }
  return plan;
}

StochasticPlan build_mms_plan(int n_sc, double epsilon, std::array<double, 2> nu_bounds,
                              std::array<double, 2> nu_m_bounds, std::uint64_t seed) {
  StochasticPlan plan = build_uniform_plan(n_sc, epsilon, nu_bounds, nu_m_bounds, seed);
  plan.model = FieldModel::mms_perturbation;
  return plan;
}

StochasticPlan build_kl_plan(int level, const KlParameters& kl, double epsilon) {
  const KlField field(kl);
  const SparseGrid grid = smolyak_grid(field.dimension(), level);
  StochasticPlan plan;
  plan.model = FieldModel::kl_field;
  plan.kl = kl;
  plan.epsilon = epsilon;
  plan.weights = grid.weights;
  plan.k = perturbation_sequence(grid.size());
  const double scale = std::sqrt(3.0);
  for (auto p : grid.points) {
    for (double& y : p) y *= scale;
    plan.points.push_back(std::move(p));
  }
  return plan;
}

StochasticPlan build_single_plan(double nu, double nu_m, double epsilon) {
  StochasticPlan plan;
  plan.model = FieldModel::constant_uniform;
  plan.epsilon = epsilon;
  plan.weights = {1.0};
  plan.k = perturbation_sequence(1);
  plan.nu = {nu};
  plan.nu_m = {nu_m};
  plan.points = {{nu, nu_m}};
  return plan;
}

double qoi_expectation(const std::vector<double>& values, const StochasticPlan& plan) {
  if (static_cast<int>(values.size()) != plan.size()) throw std::invalid_argument("QoI count does not match N_sc");
  double s = 0.0;
  for (int j = 0; j < plan.size(); ++j) s += plan.weights[j] * values[j];
  return s;
}

void write_plan_table(std::ostream& out, const StochasticPlan& plan) {
  const auto old = out.precision(17);
  out << "# model=" << to_string(plan.model) << " epsilon=" << plan.epsilon << " seed=" << plan.seed << '\n';
  out << "j weight k nu nu_m";
  const std::size_t dim = plan.points.empty() ? 0 : plan.points[0].size();
  for (std::size_t d = 0; d < dim; ++d) out << " y" << d + 1;
  out << '\n';
  for (int j = 0; j < plan.size(); ++j) {
    out << j + 1 << ' ' << plan.weights[j] << ' ' << plan.k[j] << ' ';
    if (plan.model == FieldModel::kl_field) {
      out << "kl kl";
    } else {
      out << plan.nu[j] << ' ' << plan.nu_m[j];
    }
    for (double y : plan.points[j]) out << ' ' << y;
    out << '\n';
  }
  out.precision(old);
}

MaterializedViscosity materialize_viscosity(const StochasticPlan& plan, const mesh::TriMesh& mesh,
                                            const fem::QuadratureRule& rule) {
  const int n = plan.size();
  const auto pts = fem::quadrature_points(mesh, rule);
  const std::size_t np = pts.size();
  MaterializedViscosity mv;
  mv.points_per_element = rule.size();
  mv.nu.assign(n, std::vector<double>(np));
  mv.nu_m.assign(n, std::vector<double>(np));
  if (plan.model == FieldModel::kl_field) {
    const KlField field(plan.kl);
    for (int j = 0; j < n; ++j) {
      for (std::size_t p = 0; p < np; ++p) {
        const auto [nu, nu_m] = field.viscosity(pts[p], plan.points[j]);
        if (!(nu > 0.0) || !(nu_m > 0.0)) {
          throw NonPositiveField("KL viscosity is non-positive for realization " + std::to_string(j + 1) +
                                 " at (" + std::to_string(pts[p].x) + ", " + std::to_string(pts[p].y) + ")");
        }
        mv.nu[j][p] = nu;
        mv.nu_m[j][p] = nu_m;
      }
    }
  } else {
    for (int j = 0; j < n; ++j) {
      if (!(plan.nu[j] > 0.0) || !(plan.nu_m[j] > 0.0)) {
        throw NonPositiveField("viscosity sample " + std::to_string(j + 1) + " is non-positive");
      }
      std::fill(mv.nu[j].begin(), mv.nu[j].end(), plan.nu[j]);
      std::fill(mv.nu_m[j].begin(), mv.nu_m[j].end(), plan.nu_m[j]);
    }
  }
  mv.nu_bar.assign(np, 0.0);
  mv.nu_m_bar.assign(np, 0.0);
  for (int j = 0; j < n; ++j) {
    for (std::size_t p = 0; p < np; ++p) {
      mv.nu_bar[p] += mv.nu[j][p] / n;
      mv.nu_m_bar[p] += mv.nu_m[j][p] / n;
    }
  }
  mv.nu_prime.assign(n, std::vector<double>(np));
  mv.nu_m_prime.assign(n, std::vector<double>(np));
  for (int j = 0; j < n; ++j) {
    for (std::size_t p = 0; p < np; ++p) {
      mv.nu_prime[j][p] = mv.nu[j][p] - mv.nu_bar[p];
      mv.nu_m_prime[j][p] = mv.nu_m[j][p] - mv.nu_m_bar[p];
    }
  }
  mv.nu_bar_min = *std::min_element(mv.nu_bar.begin(), mv.nu_bar.end());
  mv.nu_m_bar_min = *std::min_element(mv.nu_m_bar.begin(), mv.nu_m_bar.end());
  return mv;
}

}  // namespace mhduq::stochastic
