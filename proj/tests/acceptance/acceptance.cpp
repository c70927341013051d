// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "../common/assembly_checks.hpp"
#include "mhduq/harness/experiments.hpp"
#include "mhduq/linalg/factorization.hpp"
#include "mhduq/mesh/generators.hpp"
#include "mhduq/schemes/steppers.hpp"
#include "mhduq/schemes/transient.hpp"
#include "mhduq/stochastic/collocation.hpp"

using namespace mhduq;
using harness::ExperimentKind;
using schemes::Algorithm;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

/// Runs shared by several criteria; filled on first use.
struct Ledger {
  std::string output_root;
  /// name, max contraction ratio, contraction asserted, max divergence ratio
  struct Monitor {
    std::string run;
    double norm_ratio;
    bool asserted;
    double div_ratio;
  };
  std::vector<Monitor> monitors;

  void note(const std::string& run, double norm_ratio, bool asserted, double div_ratio) {
    monitors.push_back({run, norm_ratio, asserted, div_ratio});
  }
};

harness::ExperimentSpec acceptance_spec(ExperimentKind kind, const Ledger& ledger) {
  auto spec = harness::defaults_for(kind);
  spec.output_dir = ledger.output_root + "/" + std::string(harness::to_string(kind));
  return spec;
}

void note_study(Ledger& ledger, const std::string& name, const harness::StudyResult& r, bool asserted) {
  ledger.note(name, r.max_projection_ratio, asserted, r.max_div_ratio);
}

std::string rates_of(const harness::ConvergenceTable& t, std::size_t field) {
  std::string s;
  for (std::size_t k = 1; k < t.rows().size(); ++k) s += (k > 1 ? " " : "") + fmt("%.2f", t.rate(k, field));
  return s;
}

// ============================================================================
// AC1-AC3: convergence studies
// ============================================================================

Verdict ac1_gamma(Ledger& ledger) {
  Verdict v;
  const auto spec = acceptance_spec(ExperimentKind::gamma_study, ledger);
  const auto r = harness::run_gamma_study(spec);
  note_study(ledger, "gamma", r, true);
  const auto& t = r.table;
  for (std::size_t f = 0; f < t.fields().size(); ++f) {
    bool ok = true;
    // Only the decades starting at gamma = 10 count.
    for (std::size_t k = 1; k < t.rows().size(); ++k) {
      if (t.rows()[k - 1].parameter < 10.0) continue;
      const double rate = t.rate(k, f);
      ok = ok && rate >= 0.8 && rate <= 1.1;
    }
    v.require(ok, t.fields()[f] + " rates " + rates_of(t, f));
  }
  v.require(r.invariants_ok, "monitors");
  v.detail += fmt("; %.0f s", r.wall_seconds);
  return v;
}

Verdict ac2_temporal(Ledger& ledger) {
  Verdict v;
  const auto spec = acceptance_spec(ExperimentKind::temporal_study, ledger);
  const auto r = harness::run_temporal_study(spec);
  note_study(ledger, "temporal", r, spec.scheme.projection_boundary == schemes::ProjectionBoundary::zero_normal);
  const auto& t = r.table;
  const std::size_t last = t.rows().size() - 1;
  for (std::size_t f = 0; f < t.fields().size(); ++f) {
    const double rate = t.rate(last, f);
    v.require(rate >= 0.8 && rate <= 1.2, t.fields()[f] + " final rate " + fmt("%.2f", rate) + " (" + rates_of(t, f) + ")");
  }
  v.require(r.invariants_ok, "monitors");
  v.detail += fmt("; %.0f s", r.wall_seconds);
  return v;
}

Verdict ac3_spatial(Ledger& ledger) {
  Verdict v;
  const auto spec = acceptance_spec(ExperimentKind::spatial_study, ledger);
  const auto r = harness::run_spatial_study(spec);
  note_study(ledger, "spatial", r, spec.scheme.projection_boundary == schemes::ProjectionBoundary::zero_normal);
  const auto& t = r.table;
  const double reference = 1.1422e-4;
  for (std::size_t f = 0; f < t.fields().size(); ++f) {
    bool ok = true;
    for (std::size_t k = 1; k < t.rows().size(); ++k) ok = ok && t.rate(k, f) >= 1.85 && t.rate(k, f) <= 2.1;
    v.require(ok, t.fields()[f] + " rates " + rates_of(t, f));
    const double first = t.rows()[0].errors[f];
    v.require(first >= reference / 10 && first <= reference * 10, t.fields()[f] + " first error " + fmt("%.4e", first));
  }
  v.require(r.invariants_ok, "monitors");
  v.detail += fmt("; %.0f s", r.wall_seconds);
  return v;
}

// ============================================================================
// AC4: stability functional
// ============================================================================

VectorFunction random_bubble(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  const double a = u(gen), b = u(gen), c = u(gen), d = u(gen);
  return [a, b, c, d](double, const Point& x) {
    const double s = x.x * (1 - x.x) * x.y * (1 - x.y);
    return Vec2{s * (a + c * x.y), s * (b + d * x.x)};
  };
}

Verdict ac4_stability(Ledger& ledger) {
  Verdict v;
  std::mt19937_64 gen(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto mesh = harness::square_mesh(4, false);
  double worst = -1.0;
  int configs = 0;
  for (int c = 0; c < 10; ++c) {
    const int n_sc = 2 + c % 3;
    // nu and nu_m drawn from one narrow box so that every alpha_j is positive.
    const double base = 0.005 + 0.045 * unit(gen);
    const auto plan = stochastic::build_uniform_plan(n_sc, 0.0, {base, 1.1 * base}, {base, 1.1 * base}, gen());
    std::vector<VectorFunction> v0, w0;
    for (int j = 0; j < n_sc; ++j) {
      v0.push_back(random_bubble(gen));
      w0.push_back(random_bubble(gen));
    }
    const auto problem = schemes::make_homogeneous_problem(mesh, v0, w0);
    schemes::SchemeConfig cfg;
    cfg.dt = 0.01 + 0.09 * unit(gen);
    cfg.T = 50 * cfg.dt;
    cfg.gamma = std::pow(10.0, 3 * unit(gen));
    cfg.s = std::pow(10.0, -3 + 3 * unit(gen));
    cfg.monitor_energy = true;
    const Algorithm alg = c % 2 ? Algorithm::coupled : Algorithm::spp;

    schemes::SchemeConfig probe = cfg;
    probe.T = cfg.dt;
    probe.monitor_energy = false;
    cfg.mu = 2.0 * schemes::run_transient(alg, probe, plan, problem).stability.mu_threshold;

    const auto r = schemes::run_transient(alg, cfg, plan, problem);
    const auto& st = r.stability;
    const bool ok = st.alpha_min > 0.0 && st.functional.size() == 51u && st.functional_monotone(1e-10);
    if (!ok)
      v.require(false, "config " + std::to_string(c) + " (" + std::string(schemes::to_string(alg)) + ") alpha_min " +
                           fmt("%.3e", st.alpha_min) + " growth " + fmt("%.3e", st.worst_functional_growth));
    worst = std::max(worst, st.worst_functional_growth);
    if (alg == Algorithm::spp)
      ledger.note("stability " + std::to_string(c), st.projection.max_norm_ratio, true, st.projection.max_div_ratio);
    ++configs;
  }
  v.require(configs == 10, std::to_string(configs) + " configs x 50 steps, worst relative growth " + fmt("%.3e", worst));
  return v;
}

// ============================================================================
// AC6: shared factorizations
// ============================================================================

Verdict ac6_efficiency(Ledger& ledger) {
  Verdict v;
  // Counters: one factorization per sub-problem per step for N = 1 and N = 20.
  auto small = harness::square_mesh(4, true);
  for (int n_sc : {1, 20}) {
    const auto plan = stochastic::build_uniform_plan(n_sc, 0.01, {0.009, 0.011}, {0.0009, 0.0011}, 5);
    const auto problem = schemes::make_mms_problem(small, plan);
    for (auto alg : {Algorithm::coupled, Algorithm::spp}) {
      schemes::SchemeConfig cfg;
      cfg.dt = 0.05;
      cfg.T = 0.2;
      cfg.gamma = 100.0;
      const long before = linalg::Factorization::numeric_count();
      const auto r = schemes::run_transient(alg, cfg, plan, problem);
      const long total = linalg::Factorization::numeric_count() - before;
      const long expected = 2 * r.steps + (alg == Algorithm::spp ? 1 : 0);
      const bool ok = r.counters.max_factorizations_per_subproblem_step == 1 && total == expected;
      if (!ok)
        v.require(false, std::string(schemes::to_string(alg)) + " N=" + std::to_string(n_sc) + ": " +
                             std::to_string(total) + " factorizations, expected " + std::to_string(expected));
      if (alg == Algorithm::spp)
        ledger.note("counters N=" + std::to_string(n_sc), r.stability.projection.max_norm_ratio, true,
                    r.stability.projection.max_div_ratio);
    }
  }
  v.require(true, "factorizations per step independent of N");

  // Timing on the Step 1 system at h = 1/32.
  auto mesh = harness::square_mesh(32, true);
  const auto plan = stochastic::build_uniform_plan(20, 0.01, {0.009, 0.011}, {0.0009, 0.0011}, 5);
  const auto problem = schemes::make_mms_problem(mesh, plan);
  schemes::SchemeConfig cfg;
  cfg.dt = 0.01;
  cfg.T = 0.01;
  cfg.gamma = 500.0;
  auto disc = std::make_shared<const schemes::Discretization>(schemes::make_discretization(mesh, cfg.pair));
  auto visc = std::make_shared<const schemes::ViscosityData>(schemes::make_viscosity_data(plan, *disc));
  schemes::SppStepper stepper(disc, cfg, problem, visc);
  const auto state = stepper.initial_state();
  const auto a = stepper.momentum_matrix(state, 0);
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> rhs(20, std::vector<double>(a.rows()));
  for (auto& b : rhs)
    for (double& x : b) x = u(gen);

  using clock = std::chrono::steady_clock;
  auto seconds = [](auto t0) { return std::chrono::duration<double>(clock::now() - t0).count(); };
  double one = 1e300, many = 1e300;
  for (int rep = 0; rep < 3; ++rep) {
    auto t0 = clock::now();
    {
      linalg::Factorization lu(a);
      lu.solve(rhs[0]);
    }
    one = std::min(one, seconds(t0));
    t0 = clock::now();
    {
      linalg::Factorization lu(a);
      lu.solve_multi(rhs);
    }
    many = std::min(many, seconds(t0));
  }
  v.require(many < 2.0 * one, "n=" + std::to_string(a.rows()) + ", factorize+1 solve " + fmt("%.3f s", one) +
                                  ", factorize+20 solves " + fmt("%.3f s", many) + fmt(" (ratio %.2f)", many / one));
  return v;
}

// ============================================================================
// AC7-AC8: quadrature, collocation and assembly oracles
// ============================================================================

Verdict ac7_collocation(Ledger&) {
  Verdict v;
  double worst = 0.0;
  for (int level = 0; level <= 6; ++level) {
    const auto r = stochastic::clenshaw_curtis_1d(level);
    const int m = stochastic::clenshaw_curtis_size(level);
    for (int k = 0; k <= m - 1; ++k) {
      double s = 0.0;
      for (int i = 0; i < m; ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
      worst = std::max(worst, std::abs(s - (k % 2 ? 0.0 : 2.0 / (k + 1))));
    }
  }
  v.require(worst <= 1e-12, "CC monomials up to degree m-1, max error " + fmt("%.1e", worst));

  const auto g = stochastic::smolyak_grid(5, 1);
  double sq = 0.0;
  for (int j = 0; j < g.size(); ++j)
    for (double y : g.points[j]) sq += g.weights[j] * y * y;
  v.require(g.size() == 11, "5D level-1 grid has " + std::to_string(g.size()) + " points");
  v.require(std::abs(sq - 5.0 / 3.0) <= 1e-12, "E[sum y_i^2] error " + fmt("%.1e", std::abs(sq - 5.0 / 3.0)));
  // Same grid scaled to unit-variance KL variables.
  const auto plan = stochastic::build_kl_plan(1, stochastic::KlParameters{}, 0.0);
  double y1 = 0.0;
  for (int j = 0; j < plan.size(); ++j) y1 += plan.weights[j] * plan.points[j][0] * plan.points[j][0];
  v.require(std::abs(y1 - 1.0) <= 1e-12, "KL plan E[y_1^2] error " + fmt("%.1e", std::abs(y1 - 1.0)));
  return v;
}

Verdict ac8_assembly(Ledger&) {
  Verdict v;
  double worst = 0.0;
  std::string worst_name;
  int kinds = 0;
  for (const auto& [name, diff] : oracle::assembly_oracle_differences()) {
    if (diff > 1e-12) v.require(false, name + fmt(" differs by %.2e", diff));
    if (diff >= worst) {
      worst = diff;
      worst_name = name;
    }
    ++kinds;
  }
  v.require(true, std::to_string(kinds) + " operators, worst " + worst_name + fmt(" %.2e", worst));
  return v;
}

// ============================================================================
// AC9: benchmarks
// ============================================================================

bool non_increasing(const std::vector<double>& e) {
  for (std::size_t i = 1; i < e.size(); ++i)
    if (e[i] > e[i - 1]) return false;
  return true;
}

std::string join(const std::vector<double>& e) {
  std::string s;
  for (double x : e) s += (s.empty() ? "" : " ") + fmt("%.4f", x);
  return s;
}

void note_benchmark(Ledger& ledger, const std::string& name, const harness::BenchmarkResult& r) {
  for (const auto& run : r.runs)
    if (run.algorithm == Algorithm::spp)
      ledger.note(name + " s=" + fmt("%g", run.s), run.result.stability.projection.max_norm_ratio, true,
                  run.result.stability.projection.max_div_ratio);
}

Verdict ac9_benchmarks(Ledger& ledger, double channel_T, int cavity_n) {
  Verdict v;
  auto ch = acceptance_spec(ExperimentKind::channel, ledger);
  ch.scheme.T = channel_T;
  const auto rc = harness::run_channel(ch);
  note_benchmark(ledger, "channel", rc);
  v.require(rc.invariants_ok, fmt("channel T=%g completed", channel_T));
  v.require(rc.max_energy_gap < 0.02, fmt("channel energy gap %.2e", rc.max_energy_gap));
  const double flux_mismatch = std::abs(rc.outflow_flux - rc.inflow_flux) / std::abs(rc.inflow_flux);
  v.require(flux_mismatch < 0.05, fmt("flux in %.4f", rc.inflow_flux) + fmt(" out %.4f", rc.outflow_flux));

  auto cav = acceptance_spec(ExperimentKind::cavity, ledger);
  cav.mesh_n = cavity_n;
  const auto rv = harness::run_cavity(cav);
  note_benchmark(ledger, "cavity", rv);
  v.require(rv.invariants_ok, fmt("cavity n=%g T=", cavity_n) + fmt("%g completed", cav.scheme.T));
  v.require(rv.max_energy_gap < 0.02, fmt("cavity energy gap %.2e", rv.max_energy_gap));
  for (auto alg : {Algorithm::coupled, Algorithm::spp}) {
    const auto e = rv.final_energies(alg);
    bool finite = true;
    for (double x : e) finite = finite && std::isfinite(x);
    v.require(finite && non_increasing(e), std::string(schemes::to_string(alg)) + " final energy over s: " + join(e));
  }
  v.detail += fmt("; %.0f s", rc.wall_seconds + rv.wall_seconds);
  return v;
}

// ============================================================================
// AC5: projection monitors gathered from every run above
// ============================================================================

Verdict ac5_projection(Ledger& ledger) {
  Verdict v;
  double asserted_ratio = 0.0, reported_ratio = 0.0, div = 0.0;
  int asserted = 0, reported = 0;
  for (const auto& m : ledger.monitors) {
    div = std::max(div, m.div_ratio);
    if (m.div_ratio > schemes::ProjectionMonitor::kDivTolerance) v.require(false, m.run + fmt(" divergence %.2e", m.div_ratio));
    if (m.asserted) {
      ++asserted;
      asserted_ratio = std::max(asserted_ratio, m.norm_ratio);
      if (m.norm_ratio > 1.0 + schemes::ProjectionMonitor::kNormSlack)
        v.require(false, m.run + fmt(" norm ratio %.12f", m.norm_ratio));
    } else {
      ++reported;
      reported_ratio = std::max(reported_ratio, m.norm_ratio);
    }
  }
  v.require(asserted + reported > 0, std::to_string(asserted + reported) + " runs, max divergence ratio " + fmt("%.1e", div));
  v.require(true, std::to_string(asserted) + " zero-normal runs, max norm ratio " + fmt("%.12f", asserted_ratio));
  if (reported)
    v.require(true, std::to_string(reported) + " data-normal runs (affine projection, ratio reported only) max " +
                        fmt("%.9f", reported_ratio));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  std::vector<std::string> only;
  double channel_T = 2.0;
  int cavity_n = 8;
  Ledger ledger;
  ledger.output_root = "acceptance_out";
  app.add_option("--only", only, "criteria to run, e.g. AC1 AC7");
  app.add_option("--output", ledger.output_root, "directory for experiment outputs");
  app.add_option("--channel-T", channel_T, "channel horizon");
  app.add_option("--cavity-n", cavity_n, "cavity cells per side before refinement");
  CLI11_PARSE(app, argc, argv);

  // AC5 runs last: it audits the monitors of every run before it.
  const std::vector<std::pair<std::string, std::function<Verdict(Ledger&)>>> criteria = {
      {"AC7", ac7_collocation},
      {"AC8", ac8_assembly},
      {"AC4", ac4_stability},
      {"AC6", ac6_efficiency},
      {"AC1", ac1_gamma},
      {"AC3", ac3_spatial},
      {"AC2", ac2_temporal},
      {"AC9", [&](Ledger& l) { return ac9_benchmarks(l, channel_T, cavity_n); }},
      {"AC5", ac5_projection},
  };
  const std::set<std::string> selected(only.begin(), only.end());
  std::vector<std::pair<std::string, Verdict>> results;
  for (const auto& [name, run] : criteria) {
    if (!selected.empty() && !selected.count(name)) continue;
    Verdict v;
    try {
      v = run(ledger);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %s %s\n", name.c_str(), v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
    results.emplace_back(name, v);
  }
  const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.second.pass; });
  std::printf("%zu criteria, %s\n", results.size(), all ? "all passed" : "FAILURES");
  return all ? 0 : 1;
}
