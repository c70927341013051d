#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "mhduq/common/types.hpp"
#include "mhduq/fem/norms.hpp"
#include "mhduq/mesh/generators.hpp"
#include "mhduq/stochastic/collocation.hpp"
#include "mhduq/stochastic/ensemble.hpp"
#include "mhduq/stochastic/kl_field.hpp"
#include "mhduq/stochastic/plan.hpp"

using namespace mhduq;
using namespace mhduq::stochastic;

// ============================================================================
// Collocation
// ============================================================================

TEST_CASE("Clenshaw-Curtis rules integrate monomials up to degree m-1") {
  for (int level = 0; level <= 5; ++level) {
    const auto r = clenshaw_curtis_1d(level);
    const int m = clenshaw_curtis_size(level);
    REQUIRE(static_cast<int>(r.nodes.size()) == m);
    for (int k = 0; k <= m - 1; ++k) {
      double s = 0.0;
      for (int i = 0; i < m; ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
      CAPTURE(level);
      CAPTURE(k);
      CHECK(std::abs(s - (k % 2 ? 0.0 : 2.0 / (k + 1))) <= 1e-12);
    }
  }
}

TEST_CASE("five-dimensional level-1 Smolyak grid") {
  const auto g = smolyak_grid(5, 1);
  CHECK(g.size() == 11);
  double wsum = 0.0, sq = 0.0;
  for (int j = 0; j < g.size(); ++j) {
    wsum += g.weights[j];
    double s = 0.0;
    for (double y : g.points[j]) s += y * y;
    sq += g.weights[j] * s;
  }
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
  // E[sum y_i^2] for y ~ U[-1,1]^5 is 5/3.
  CHECK(std::abs(sq - 5.0 / 3.0) <= 1e-12);
}

TEST_CASE("Smolyak grids integrate total-degree polynomials exactly") {
  // Level L is exact for total degree 2L + 1; check a mixed quadratic and a cubic.
  const auto g = smolyak_grid(3, 2);
  double mixed = 0.0, cubic = 0.0, quartic = 0.0;
  for (int j = 0; j < g.size(); ++j) {
    const auto& y = g.points[j];
    mixed += g.weights[j] * y[0] * y[0] * y[1] * y[1];
    cubic += g.weights[j] * y[0] * y[1] * y[2];
    quartic += g.weights[j] * std::pow(y[2], 4);
  }
  CHECK(std::abs(mixed - 1.0 / 9.0) <= 1e-12);
  CHECK(std::abs(cubic) <= 1e-12);
  CHECK(std::abs(quartic - 1.0 / 5.0) <= 1e-12);
  CHECK(smolyak_grid(2, 0).size() == 1);
}

// ============================================================================
// Plans
// ============================================================================

TEST_CASE("perturbation multipliers alternate in sign") {
  const auto k = perturbation_sequence(4);
  REQUIRE(k.size() == 4u);
  CHECK(k[0] == doctest::Approx(1.0));
  CHECK(k[1] == doctest::Approx(-1.0));
  CHECK(k[2] == doctest::Approx(2.0));
  CHECK(k[3] == doctest::Approx(-2.0));
}

TEST_CASE("uniform plans are seeded and bounded") {
  const auto a = build_uniform_plan(20, 0.01, {0.009, 0.011}, {0.0009, 0.0011}, 42);
  const auto b = build_uniform_plan(20, 0.01, {0.009, 0.011}, {0.0009, 0.0011}, 42);
  const auto c = build_uniform_plan(20, 0.01, {0.009, 0.011}, {0.0009, 0.0011}, 43);
  CHECK(a.nu == b.nu);
  CHECK(a.nu_m == b.nu_m);
  CHECK(a.nu != c.nu);
  for (int j = 0; j < a.size(); ++j) {
    CHECK(a.weights[j] == doctest::Approx(0.05));
    CHECK(a.nu[j] >= 0.009);
    CHECK(a.nu[j] <= 0.011);
    CHECK(a.nu_m[j] >= 0.0009);
    CHECK(a.nu_m[j] <= 0.0011);
  }
  CHECK(a.amplitude(0) == doctest::Approx(1.0 + 0.01 * 0.2));
  CHECK(qoi_expectation(std::vector<double>(20, 3.0), a) == doctest::Approx(3.0));
  CHECK_THROWS(build_uniform_plan(0, 0.01, {0.009, 0.011}, {0.0009, 0.0011}, 1));
}

TEST_CASE("KL model: eigenvalue decay and mean") {
  KlParameters p;
  p.correlation_length = 0.5;
  p.q = 3;
  const KlField f(p);
  CHECK(f.dimension() == 7);
  const double pi = std::acos(-1.0);
  for (int j = 1; j <= 3; ++j)
    CHECK(f.sqrt_xi(j) == doctest::Approx(std::sqrt(std::sqrt(pi) * 0.5) * std::exp(-std::pow(j * pi * 0.5, 2) / 8)));
  const std::vector<double> zero(7, 0.0);
  CHECK(f.psi({0.3, -0.2}, zero) == doctest::Approx(1.0));
  const auto [nu, nu_m] = f.viscosity({0.3, -0.2}, zero);
  CHECK(nu == doctest::Approx(p.nu_scale));
  CHECK(nu_m == doctest::Approx(p.nu_m_scale));
  // y_1 shifts the field by the constant mode amplitude.
  std::vector<double> y1 = zero;
  y1[0] = 1.0;
  CHECK(f.psi({0.1, 0.1}, y1) - 1.0 == doctest::Approx(std::sqrt(std::sqrt(pi) * 0.5 / 2.0)));
}

TEST_CASE("KL plan on the level-1 sparse grid") {
  const auto plan = build_kl_plan(1, KlParameters{}, 0.01);
  CHECK(plan.size() == 11);
  CHECK(plan.model == FieldModel::kl_field);
  double s = 0.0;
  for (double w : plan.weights) s += w;
  CHECK(s == doctest::Approx(1.0));
  // Unit-variance variables: E[y_1^2] = 1.
  double y1 = 0.0;
  for (int j = 0; j < plan.size(); ++j) y1 += plan.weights[j] * plan.points[j][0] * plan.points[j][0];
  CHECK(std::abs(y1 - 1.0) <= 1e-12);
  std::ostringstream table;
  write_plan_table(table, plan);
  CHECK(table.str().find("kl_field") != std::string::npos);
}

TEST_CASE("materialized viscosity: means, fluctuations and positivity") {
  auto mesh = std::make_shared<const mesh::TriMesh>(mesh::generate_square(2, {-1, -1}, {1, 1}));
  const auto rule = fem::triangle_rule(5);
  auto plan = build_single_plan(0.02, 0.005);
  const auto single = materialize_viscosity(plan, *mesh, rule);
  CHECK(single.nu_bar_min == doctest::Approx(0.02));
  CHECK(single.nu_m_bar_min == doctest::Approx(0.005));
  for (double x : single.nu_prime[0]) CHECK(x == 0.0);

  const auto two = build_uniform_plan(2, 0.0, {0.01, 0.03}, {0.001, 0.002}, 5);
  const auto f = materialize_viscosity(two, *mesh, rule);
  CHECK(f.nu_bar[0] == doctest::Approx(0.5 * (two.nu[0] + two.nu[1])));
  CHECK(f.nu_prime[0][0] + f.nu_prime[1][0] == doctest::Approx(0.0));

  KlParameters bad;
  bad.c = 0.1;  // the constant mode at y_1 = -sqrt 3 drives psi below zero
  bad.correlation_length = 1.0;
  const auto kl = build_kl_plan(1, bad, 0.0);
  CHECK_THROWS_AS(materialize_viscosity(kl, *mesh, rule), NonPositiveField);
}

// ============================================================================
// Ensemble statistics
// ============================================================================

TEST_CASE("ensemble mean, fluctuations and mixing length") {
  auto mesh = std::make_shared<const mesh::TriMesh>(mesh::generate_square(2));
  auto v = std::make_shared<const fem::FeSpace>(mesh, fem::Family::P2, 2);
  std::vector<fem::FeFunction> z;
  for (double c : {1.0, 2.0, 6.0}) z.push_back(fem::interpolate(VectorFunction([c](double, const Point&) { return Vec2{c, -c}; }), 0.0, v));
  const auto rule = fem::triangle_rule(5);
  const auto st = field_stats(z, rule);
  CHECK(st.mean[0] == doctest::Approx(3.0));
  CHECK(st.fluctuations[2][0] == doctest::Approx(3.0));
  // l^2 = sum_j |z'_j|^2 = 2 (4 + 1 + 9)
  for (double l : st.l_sq) CHECK(l == doctest::Approx(28.0));
  CHECK(ensemble_mean(z)[v->n_scalar_dofs()] == doctest::Approx(-3.0));
}
