#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "mhduq/common/types.hpp"
#include "mhduq/fem/assembly.hpp"
#include "mhduq/fem/boundary.hpp"
#include "mhduq/fem/norms.hpp"
#include "mhduq/mesh/generators.hpp"
#include "mhduq/schemes/output.hpp"
#include "mhduq/schemes/transient.hpp"
#include "mhduq/stochastic/ensemble.hpp"

using namespace mhduq;
using namespace mhduq::schemes;

namespace {

std::shared_ptr<const mesh::TriMesh> square(int n, bool bary = false) {
  auto m = mesh::generate_square(n);
  return std::make_shared<const mesh::TriMesh>(bary ? mesh::barycentric_refine(m) : m);
}

SchemeConfig short_config(double dt, double T, double gamma) {
  SchemeConfig c;
  c.dt = dt;
  c.T = T;
  c.gamma = gamma;
  return c;
}

stochastic::StochasticPlan small_mms_plan(int n) {
  return stochastic::build_mms_plan(n, 0.05, {0.009, 0.011}, {0.0009, 0.0011}, 3);
}

/// Smooth field vanishing on the boundary of the unit square.
VectorFunction bubble(double a, double b) {
  return [a, b](double, const Point& x) {
    const double s = x.x * (1 - x.x) * x.y * (1 - x.y);
    return Vec2{a * s * (1 + x.y), b * s * (1 - x.x)};
  };
}

}  // namespace

// ============================================================================
// Configuration
// ============================================================================

TEST_CASE("scheme configuration checks") {
  SchemeConfig c = short_config(0.1, 1.0, 10.0);
  CHECK(c.steps() == 10);
  CHECK_NOTHROW(c.validate());
  c.T = 0.05;  // T < dt: no step to take
  CHECK_THROWS(c.validate());
  c = short_config(-0.1, 1.0, 0.0);
  CHECK_THROWS(c.validate());
  c = short_config(0.1, 1.0, -1.0);
  CHECK_THROWS(c.validate());
  CHECK(parse_element_pair("SV") == ElementPair::scott_vogelius);
  CHECK(parse_algorithm(to_string(Algorithm::spp)) == Algorithm::spp);
  CHECK(parse_projection_boundary("data_normal") == ProjectionBoundary::data_normal);
  CHECK_THROWS(parse_algorithm("split"));
}

// ============================================================================
// Stability parameters and energies
// ============================================================================

TEST_CASE("alpha for identical constant viscosities") {
  auto mesh = square(2);
  const auto rule = fem::triangle_rule(5);
  auto plan = stochastic::build_uniform_plan(3, 0.0, {0.01, 0.01}, {0.01, 0.01}, 1);
  const auto rep = stability_params(stochastic::materialize_viscosity(plan, *mesh, rule), 1.0, 0.1);
  for (double a : rep.alpha) CHECK(a == doctest::Approx(0.02));
  CHECK(rep.alpha_min == doctest::Approx(0.02));
  CHECK(rep.mu_threshold == doctest::Approx(1.0 / (2 * 0.1 * 0.02)));
  CHECK_FALSE(rep.mu_threshold_ok);
  CHECK(rep.functional_weight == doctest::Approx(0.02 * 0.1 / 2));
}

TEST_CASE("alpha of a single realization drops the fluctuation terms") {
  auto mesh = square(2);
  const auto rep = stability_params(
      stochastic::materialize_viscosity(stochastic::build_single_plan(0.03, 0.01), *mesh, fem::triangle_rule(5)), 1e6, 0.1);
  CHECK(rep.alpha[0] == doctest::Approx(0.03 + 0.01 - 0.02));
  CHECK(rep.mu_threshold_ok);
  CHECK(rep.warnings.empty());
}

TEST_CASE("non-positive alpha only warns") {
  auto mesh = square(2);
  const auto rep = stability_params(
      stochastic::materialize_viscosity(stochastic::build_single_plan(0.1, 0.001), *mesh, fem::triangle_rule(5)), 1.0, 0.1);
  CHECK(rep.alpha[0] == doctest::Approx(0.002));
  auto plan = stochastic::build_uniform_plan(4, 0.0, {0.001, 0.1}, {0.001, 0.002}, 9);
  const auto bad = stability_params(stochastic::materialize_viscosity(plan, *mesh, fem::triangle_rule(5)), 1.0, 0.1);
  CHECK(bad.alpha_min <= 0.0);
  CHECK_FALSE(bad.warnings.empty());
}

TEST_CASE("weighted mean energy examples") {
  auto mesh = square(3);
  auto v = std::make_shared<const fem::FeSpace>(mesh, fem::Family::P2, 2);
  auto constant = [&](double c) {
    return fem::interpolate(VectorFunction([c](double, const Point&) { return Vec2{c, 0.0}; }), 0.0, v);
  };
  CHECK(weighted_mean_energy({constant(0.0)}, stochastic::build_single_plan(0.01, 0.01)) == 0.0);
  CHECK(weighted_mean_energy({constant(1.0)}, stochastic::build_single_plan(0.01, 0.01)) == doctest::Approx(0.5));
  const auto two = stochastic::build_uniform_plan(2, 0.0, {0.01, 0.02}, {0.01, 0.02}, 1);
  CHECK(weighted_mean_energy({constant(2.0), constant(4.0)}, two) == doctest::Approx(1.5));
  CHECK(weighted_mean_kinetic_energy({constant(2.0), constant(4.0)}, two) == doctest::Approx(5.0));
}

// ============================================================================
// Steppers
// ============================================================================

TEST_CASE("zero data stays zero") {
  auto mesh = square(2);
  auto zero = VectorFunction([](double, const Point&) { return Vec2{0.0, 0.0}; });
  const auto problem = make_homogeneous_problem(mesh, {zero}, {zero});
  const auto plan = stochastic::build_single_plan(0.01, 0.01);
  for (auto alg : {Algorithm::coupled, Algorithm::spp}) {
    const auto r = run_transient(alg, short_config(0.1, 0.3, 0.0), plan, problem);
    CHECK(r.steps == 3);
    for (const auto& f : primary_v(r.final_state, alg)) CHECK(fem::l2_norm(f) == 0.0);
    CHECK(r.mean_energy.back() == 0.0);
  }
}

TEST_CASE("one factorization per sub-problem per step, regardless of ensemble size") {
  auto mesh = square(3);
  for (int n_sc : {1, 5}) {
    const auto plan = small_mms_plan(n_sc);
    const auto problem = make_mms_problem(mesh, plan);
    for (auto alg : {Algorithm::coupled, Algorithm::spp}) {
      const long before = linalg::Factorization::numeric_count();
      const auto r = run_transient(alg, short_config(0.05, 0.2, 100.0), plan, problem);
      const long total = linalg::Factorization::numeric_count() - before;
      CAPTURE(n_sc);
      CHECK(r.counters.steps == 4);
      CHECK(r.counters.max_factorizations_per_subproblem_step == 1);
      CHECK(r.counters.momentum_factorizations == 2 * 4);
      CHECK(r.counters.solves == 2 * 4 * n_sc * (alg == Algorithm::spp ? 2 : 1));
      if (alg == Algorithm::spp) {
        CHECK(r.counters.projection_factorizations == 1);
        CHECK(total == 2 * 4 + 1);
      } else {
        CHECK(total == 2 * 4);
      }
    }
  }
}

TEST_CASE("Step 1 and Step 3 matrices differ only through wind and eddy coefficient") {
  auto mesh = square(3);
  const auto plan = small_mms_plan(3);
  const auto problem = make_mms_problem(mesh, plan);
  SchemeConfig cfg = short_config(0.1, 1.0, 50.0);
  cfg.mu = 0.7;
  auto disc = std::make_shared<const Discretization>(make_discretization(mesh, cfg.pair));
  auto visc = std::make_shared<const ViscosityData>(make_viscosity_data(plan, *disc));
  SppStepper stepper(disc, cfg, problem, visc);
  auto state = stepper.initial_state();
  stepper.step(state);  // level 1: hats differ across realizations and from the data

  const auto a1 = stepper.momentum_matrix(state, 0);
  const auto a3 = stepper.momentum_matrix(state, 1);
  REQUIRE(a1.same_pattern(a3));

  const auto sv = stochastic::field_stats(state.v_hat, disc->rule());
  const auto sw = stochastic::field_stats(state.w_hat, disc->rule());
  const int ppe = disc->rule().size();
  const auto& v = *disc->velocity;
  auto expected = fem::assemble_operator(fem::Convection{sw.mean}, v, v).to_dense();
  const auto c3 = fem::assemble_operator(fem::Convection{sv.mean}, v, v).to_dense();
  const auto e1 = fem::assemble_operator(fem::EddyViscosity{fem::Coefficient::sampled(sw.l_sq, ppe), cfg.mu * cfg.dt}, v, v).to_dense();
  const auto e3 = fem::assemble_operator(fem::EddyViscosity{fem::Coefficient::sampled(sv.l_sq, ppe), cfg.mu * cfg.dt}, v, v).to_dense();
  const auto d1 = a1.to_dense(), d3 = a3.to_dense();

  std::vector<bool> fixed(v.n_dofs(), false);
  fem::DirichletBc bc(disc->velocity, {{mesh::BoundaryTag::all, problem.realizations[0].v_bc}});
  for (int d : bc.dofs()) fixed[d] = true;

  double worst = 0.0, scale = 0.0;
  for (int i = 0; i < v.n_dofs(); ++i)
    for (int j = 0; j < v.n_dofs(); ++j) {
      scale = std::max(scale, std::abs(d1[i][j]));
      const double want = fixed[i] ? 0.0 : (expected[i][j] - c3[i][j]) + (e1[i][j] - e3[i][j]);
      worst = std::max(worst, std::abs((d1[i][j] - d3[i][j]) - want));
    }
  CHECK(worst <= 1e-12 * scale);
}

TEST_CASE("projection output is discretely divergence free and no longer than its input") {
  auto mesh = square(3);
  const auto plan = small_mms_plan(2);
  const auto problem = make_homogeneous_problem(mesh, {bubble(3, -2), bubble(-1, 4)}, {bubble(1, 1), bubble(2, -5)});
  SchemeConfig cfg = short_config(0.1, 1.0, 0.0);
  auto disc = std::make_shared<const Discretization>(make_discretization(mesh, cfg.pair));
  auto visc = std::make_shared<const ViscosityData>(make_viscosity_data(plan, *disc));
  SppStepper stepper(disc, cfg, problem, visc);
  auto state = stepper.initial_state();
  const auto nd = fem::normal_component_dofs(*disc->velocity, mesh::BoundaryTag::all);
  for (int k = 0; k < 3; ++k) {
    stepper.step(state);
    for (int j = 0; j < 2; ++j) {
      for (const auto* pair : {&state.v_tilde, &state.w_tilde}) {
        const auto& t = (*pair)[j];
        const auto div = disc->div * t.coefficients;
        double m = 0.0;
        for (double x : div) m = std::max(m, std::abs(x));
        CHECK(m <= 1e-9 * fem::h1_norm(t));
        for (int d : nd) CHECK(std::abs(t[d]) < 1e-14);
      }
      CHECK(fem::l2_norm(state.v_tilde[j]) <= fem::l2_norm(state.v_hat[j]) * (1 + 1e-12));
      CHECK(fem::l2_norm(state.w_tilde[j]) <= fem::l2_norm(state.w_hat[j]) * (1 + 1e-12));
    }
  }
  CHECK(stepper.projection_monitor().checks == 3 * 2 * 2);
  CHECK(stepper.projection_monitor().ok());
}

TEST_CASE("stability functional decreases for homogeneous data") {
  auto mesh = square(4);
  const auto plan = stochastic::build_uniform_plan(3, 0.0, {0.02, 0.022}, {0.02, 0.022}, 17);
  const auto problem =
      make_homogeneous_problem(mesh, {bubble(20, -10), bubble(-5, 15), bubble(8, 8)}, {bubble(5, 5), bubble(-10, 3), bubble(1, -12)});
  for (auto alg : {Algorithm::coupled, Algorithm::spp}) {
    SchemeConfig cfg = short_config(0.1, 2.0, 100.0);
    const auto pre = run_transient(alg, short_config(0.1, 0.1, 100.0), plan, problem);
    cfg.mu = 2.0 * pre.stability.mu_threshold;
    cfg.monitor_energy = true;
    const auto r = run_transient(alg, cfg, plan, problem);
    CHECK(r.stability.alpha_min > 0.0);
    CHECK(r.stability.functional.size() == 21u);
    CHECK(r.stability.functional_monotone());
  }
}

TEST_CASE("coupled scheme converges to the manufactured solution") {
  // Ten steps: the spatial error dominates and drops by about 4 per halving of h.
  std::vector<double> err;
  for (int n : {4, 8}) {
    auto mesh = square(n, true);
    const auto plan = small_mms_plan(2);
    const auto problem = make_mms_problem(mesh, plan);
    const auto r = run_transient(Algorithm::coupled, short_config(0.01, 0.1, 0.0), plan, problem);
    const auto exact = problem.exact[0].v_function();
    err.push_back(fem::l2_error(r.final_state.v[0], exact, r.final_state.t) / fem::l2_norm(r.final_state.v[0]));
  }
  CAPTURE(err[0]);
  CAPTURE(err[1]);
  CHECK(err[0] < 1e-2);
  CHECK(err[0] / err[1] > 3.5);
}

TEST_CASE("Scott-Vogelius velocities are pointwise divergence free") {
  auto mesh = square(3, true);
  const auto plan = small_mms_plan(2);
  const auto problem = make_mms_problem(mesh, plan);
  SchemeConfig cfg = short_config(0.01, 0.02, 0.0);
  cfg.pair = ElementPair::scott_vogelius;
  const auto r = run_transient(Algorithm::coupled, cfg, plan, problem);
  for (const auto& v : r.final_state.v) CHECK(fem::div_l2_norm(v) < 1e-9 * fem::h1_norm(v));
}

TEST_CASE("iterative and direct solves agree") {
  auto mesh = square(3);
  const auto plan = small_mms_plan(2);
  const auto problem = make_mms_problem(mesh, plan);
  SchemeConfig cfg = short_config(0.05, 0.1, 10.0);
  const auto direct = run_transient(Algorithm::spp, cfg, plan, problem);
  cfg.solver.kind = SolverKind::iterative;
  cfg.solver.iterative.tol = 1e-12;
  const auto krylov = run_transient(Algorithm::spp, cfg, plan, problem);
  for (int j = 0; j < 2; ++j) {
    const auto& a = direct.final_state.v_hat[j];
    const auto& b = krylov.final_state.v_hat[j];
    REQUIRE(a.size() == b.size());
    double diff = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      diff = std::max(diff, std::abs(a[i] - b[i]));
      ref = std::max(ref, std::abs(a[i]));
    }
    CHECK(diff < 1e-8 * ref);
  }
}

TEST_CASE("non-finite fields abort with the step index") {
  auto mesh = square(2);
  auto zero = VectorFunction([](double, const Point&) { return Vec2{0.0, 0.0}; });
  auto problem = make_homogeneous_problem(mesh, {zero}, {zero});
  problem.realizations[0].f1 = [](double t, const Point&) {
    return Vec2{t > 0.15 ? std::numeric_limits<double>::quiet_NaN() : 0.0, 0.0};
  };
  try {
    run_transient(Algorithm::spp, short_config(0.1, 0.5, 0.0), stochastic::build_single_plan(0.01, 0.01), problem);
    FAIL("expected SolutionBlowup");
  } catch (const SolutionBlowup& e) {
    CHECK(e.step() == 2);
    CHECK(e.realization() == 0);
  }
}

// ============================================================================
// Benchmark problems
// ============================================================================

TEST_CASE("channel starts from the inflow profile with zero magnetic field") {
  auto mesh = std::make_shared<const mesh::TriMesh>(mesh::generate_step_channel(1));
  const auto plan = stochastic::build_uniform_plan(2, 0.01, {0.0009, 0.0011}, {0.009, 0.011}, 4);
  const auto problem = make_channel_problem(mesh, plan, 0.001);
  CHECK(problem.normal_tag == mesh::BoundaryTag::wall);
  CHECK_FALSE(problem.normal_covers_boundary());
  auto disc = std::make_shared<const Discretization>(make_discretization(mesh, ElementPair::taylor_hood));
  auto visc = std::make_shared<const ViscosityData>(make_viscosity_data(plan, *disc));
  CoupledStepper stepper(disc, short_config(0.05, 0.1, 0.0), problem, visc);
  const auto s = stepper.initial_state();
  for (int j = 0; j < 2; ++j) {
    const double a = plan.amplitude(j);
    const auto u = fem::linear_combination(0.5, s.v[j], 0.5, s.w[j]);
    const auto b = fem::linear_combination(0.5 / std::sqrt(0.001), s.v[j], -0.5 / std::sqrt(0.001), s.w[j]);
    CHECK(fem::l2_error(u, VectorFunction([a](double, const Point& x) { return Vec2{a * x.y * (10 - x.y) / 25, 0.0}; }), 0.0) < 1e-10);
    CHECK(fem::l2_norm(b) < 1e-10);
  }
}

TEST_CASE("cavity flow starts from rest and carries lid data") {
  auto mesh = std::make_shared<const mesh::TriMesh>(mesh::generate_square(4, {-1, -1}, {1, 1}));
  const auto plan = stochastic::build_single_plan(2.0 / 15000.0, 0.01);
  const auto problem = make_cavity_problem(mesh, plan, 0.1);
  SchemeConfig cfg = short_config(5.0, 10.0, 1e4);
  cfg.s = 0.1;
  const auto r = run_transient(Algorithm::spp, cfg, plan, problem);
  CHECK(r.mean_energy.front() == 0.0);
  CHECK(r.mean_energy.back() > 0.0);
  const auto u = primitive_velocities(r.final_state, Algorithm::spp);
  // The lid midpoint moves at (1 - 0^2)^2 = 1.
  const auto& v = *u[0].space;
  for (int d = 0; d < v.n_scalar_dofs(); ++d) {
    const Point& x = v.node(d);
    if (std::abs(x.x) < 1e-12 && x.y > 1 - 1e-12) CHECK(u[0][v.dof(0, d)] == doctest::Approx(1.0));
  }
}

// ============================================================================
// Output
// ============================================================================

TEST_CASE("energy CSV and snapshot files") {
  auto mesh = square(2);
  const auto plan = small_mms_plan(2);
  const auto problem = make_mms_problem(mesh, plan);
  const auto r = run_transient(Algorithm::spp, short_config(0.1, 0.2, 10.0), plan, problem);
  std::ostringstream csv;
  write_energy_csv(csv, r);
  std::istringstream in(csv.str());
  std::string header, line;
  std::getline(in, header);
  CHECK(header == "t,E_1,E_2,mean_energy,mean_kinetic_energy");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);

  const auto path = std::filesystem::temp_directory_path() / "mhduq_snapshot_test.vtk";
  write_snapshot(path, r.final_state, Algorithm::spp, *std::make_shared<const Discretization>(make_discretization(mesh, ElementPair::taylor_hood)), 1.0);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  for (const char* name : {"VECTORS u", "VECTORS B", "SCALARS speed", "SCALARS B_magnitude"})
    CHECK(ss.str().find(name) != std::string::npos);
  std::filesystem::remove(path);
}
