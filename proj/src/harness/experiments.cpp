#include "mhduq/harness/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "mhduq/fem/norms.hpp"
#include "mhduq/harness/svg_plot.hpp"
#include "mhduq/mesh/generators.hpp"
#include "mhduq/schemes/output.hpp"
#include "mhduq/stochastic/ensemble.hpp"

namespace mhduq::harness {

using schemes::Algorithm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

void add_warnings(std::vector<std::string>& out, const std::vector<std::string>& in) {
  for (const auto& w : in)
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
}

std::filesystem::path prepare_output(const ExperimentSpec& spec) {
  const auto dir = resolve_output_dir(spec);
  std::filesystem::create_directories(dir);
  std::ofstream cfg(dir / "effective-config");
  if (!cfg) throw std::runtime_error("output directory is not writable: " + dir.string());
  cfg << effective_config(spec);
  return dir;
}

void write_plan(const std::filesystem::path& dir, const stochastic::StochasticPlan& plan, const std::string& name) {
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  stochastic::write_plan_table(out, plan);
}

/// Re-throws solver failures with the ladder rung attached.
template <class F>
auto annotated(const std::string& rung, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    throw std::runtime_error(rung + ": " + e.what());
  }
}

/// Equal-weight mean of the exact Elsasser fields and their gradients.
struct ExactMean {
  VectorFunction v, w;
  GradientFunction grad_v, grad_w;
};

ExactMean exact_mean(const schemes::Problem& problem) {
  if (problem.exact.empty()) throw std::invalid_argument("problem has no manufactured solution");
  const auto exact = problem.exact;
  const double inv = 1.0 / static_cast<double>(exact.size());
  auto vec = [exact, inv](bool is_v) -> VectorFunction {
    return [exact, inv, is_v](double t, const Point& x) {
      Vec2 s{0.0, 0.0};
      for (const auto& m : exact) s = s + (is_v ? m.v(t, x) : m.w(t, x));
      return inv * s;
    };
  };
  auto grad = [exact, inv](bool is_v) -> GradientFunction {
    return [exact, inv, is_v](double t, const Point& x) {
      Mat2 s{};
      for (const auto& m : exact) {
        const Mat2 g = is_v ? m.grad_v(t, x) : m.grad_w(t, x);
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) s[a][b] += inv * g[a][b];
      }
      return s;
    };
  };
  return {vec(true), vec(false), grad(true), grad(false)};
}

/// sqrt(sum_n dt ||<z>(t_n) - <z_h>^n||_H1^2) for v and w over one run.
struct ErrorAccumulator {
  const ExactMean* exact;
  double dt;
  double sum_v = 0.0, sum_w = 0.0;

  void operator()(const schemes::StepView& s) {
    if (s.n == 0) return;
    const auto v = stochastic::ensemble_mean(schemes::primary_v(s.state, s.algorithm));
    const auto w = stochastic::ensemble_mean(schemes::primary_w(s.state, s.algorithm));
    sum_v += dt * (std::pow(fem::l2_error(v, exact->v, s.t), 2) + std::pow(fem::h1_semi_error(v, exact->grad_v, s.t), 2));
    sum_w += dt * (std::pow(fem::l2_error(w, exact->w, s.t), 2) + std::pow(fem::h1_semi_error(w, exact->grad_w, s.t), 2));
  }
  std::vector<double> errors() const { return {std::sqrt(sum_v), std::sqrt(sum_w)}; }
};

void note_run(StudyResult& r, const schemes::RunResult& run) {
  r.invariants_ok = r.invariants_ok && run.invariants_ok();
  r.max_projection_ratio = std::max(r.max_projection_ratio, run.stability.projection.max_norm_ratio);
  r.max_div_ratio = std::max(r.max_div_ratio, run.stability.projection.max_div_ratio);
  add_warnings(r.warnings, run.stability.warnings);
}

std::vector<std::string> error_fields(const std::vector<Algorithm>& algorithms) {
  std::vector<std::string> f;
  for (auto a : algorithms) {
    f.push_back("v[" + std::string(schemes::to_string(a)) + "]");
    f.push_back("w[" + std::string(schemes::to_string(a)) + "]");
  }
  return f;
}

void emit_study(const StudyResult& r, const ExperimentSpec& spec, const stochastic::StochasticPlan& plan,
                const std::string& x_label) {
  const auto dir = prepare_output(spec);
  const std::string stem(to_string(spec.kind));
  r.table.write_csv(dir / (stem + ".csv"));
  write_plan(dir, plan, "plan.txt");
  if (!spec.write_plots) return;
  std::vector<Series> series;
  for (std::size_t f = 0; f < r.table.fields().size(); ++f) {
    Series s{r.table.fields()[f], {}, {}};
    for (const auto& row : r.table.rows()) {
      s.x.push_back(row.parameter);
      s.y.push_back(row.errors[f]);
    }
    series.push_back(std::move(s));
  }
  write_line_chart(dir / (stem + ".svg"), series, {stem, x_label, "error in L2(0,T;H1)", true, true});
}

}  // namespace

// ============================================================================
// Meshes and plans
// ============================================================================

std::shared_ptr<const mesh::TriMesh> square_mesh(int n, bool barycentric) {
  auto m = mesh::generate_square(n);
  return std::make_shared<const mesh::TriMesh>(barycentric ? mesh::barycentric_refine(m) : std::move(m));
}

std::shared_ptr<const mesh::TriMesh> cavity_mesh(int n, bool barycentric) {
  auto m = mesh::retag_boundary(mesh::generate_square(n, {-1.0, -1.0}, {1.0, 1.0}),
                                [](const Point& x, mesh::BoundaryTag old) {
                                  return x.y > 1.0 - 1e-9 ? mesh::BoundaryTag::lid : old;
                                });
  return std::make_shared<const mesh::TriMesh>(barycentric ? mesh::barycentric_refine(m) : std::move(m));
}

std::shared_ptr<const mesh::TriMesh> channel_mesh(int resolution, bool barycentric) {
  auto m = mesh::generate_step_channel(resolution);
  return std::make_shared<const mesh::TriMesh>(barycentric ? mesh::barycentric_refine(m) : std::move(m));
}

stochastic::StochasticPlan mms_plan(const ExperimentSpec& spec) {
  return stochastic::build_mms_plan(spec.n_sc, spec.epsilon, spec.nu_bounds, spec.nu_m_bounds, spec.seed);
}

stochastic::StochasticPlan channel_plan(const ExperimentSpec& spec) {
  return stochastic::build_uniform_plan(spec.n_sc, spec.epsilon, spec.nu_bounds, spec.nu_m_bounds, spec.seed);
}

stochastic::StochasticPlan cavity_plan(const ExperimentSpec& spec) {
  auto plan = stochastic::build_kl_plan(spec.sparse_level, spec.kl, spec.epsilon);
  plan.seed = spec.seed;
  return plan;
}

std::filesystem::path resolve_output_dir(const ExperimentSpec& spec) {
  std::filesystem::path dir(spec.output_dir);
  if (dir.is_relative()) {
    if (const char* root = std::getenv("MHDUQ_OUTPUT_ROOT"); root && *root) dir = std::filesystem::path(root) / dir;
  }
  return dir;
}

// ============================================================================
// Convergence studies
// ============================================================================

StudyResult run_gamma_study(const ExperimentSpec& spec, bool write_outputs) {
  validate(spec);
  const auto start = Clock::now();
  const auto plan = mms_plan(spec);
  const auto problem = schemes::make_mms_problem(square_mesh(spec.mesh_n, spec.barycentric), plan, spec.scheme.s);
  auto disc = std::make_shared<const schemes::Discretization>(schemes::make_discretization(problem.mesh, spec.scheme.pair));

  StudyResult r;
  r.table = ConvergenceTable("gamma", {"v", "w"});
  for (double gamma : spec.gamma_ladder) {
    schemes::SchemeConfig cfg = spec.scheme;
    cfg.gamma = gamma;
    const std::string rung = "gamma=" + fmt("%g", gamma);

    std::vector<fem::FeFunction> cv, cw;
    schemes::RunOptions opts;
    opts.record_energy = false;
    opts.on_step = [&](const schemes::StepView& s) {
      cv.push_back(stochastic::ensemble_mean(schemes::primary_v(s.state, s.algorithm)));
      cw.push_back(stochastic::ensemble_mean(schemes::primary_w(s.state, s.algorithm)));
    };
    note_run(r, annotated(rung, [&] { return schemes::run_transient(Algorithm::coupled, cfg, plan, problem, disc, opts); }));

    double sv = 0.0, sw = 0.0;
    opts.on_step = [&](const schemes::StepView& s) {
      if (s.n == 0) return;
      const auto dv = fem::linear_combination(1.0, cv[s.n], -1.0, stochastic::ensemble_mean(schemes::primary_v(s.state, s.algorithm)));
      const auto dw = fem::linear_combination(1.0, cw[s.n], -1.0, stochastic::ensemble_mean(schemes::primary_w(s.state, s.algorithm)));
      sv += cfg.dt * std::pow(fem::h1_norm(dv), 2);
      sw += cfg.dt * std::pow(fem::h1_norm(dw), 2);
    };
    note_run(r, annotated(rung, [&] { return schemes::run_transient(Algorithm::spp, cfg, plan, problem, disc, opts); }));
    r.table.add_row(gamma, {std::sqrt(sv), std::sqrt(sw)});
  }
  r.wall_seconds = seconds_since(start);
  if (write_outputs) emit_study(r, spec, plan, "gamma");
  return r;
}

StudyResult run_temporal_study(const ExperimentSpec& spec, bool write_outputs) {
  validate(spec);
  const auto start = Clock::now();
  const auto plan = mms_plan(spec);
  const auto problem = schemes::make_mms_problem(square_mesh(spec.mesh_n, spec.barycentric), plan, spec.scheme.s);
  auto disc = std::make_shared<const schemes::Discretization>(schemes::make_discretization(problem.mesh, spec.scheme.pair));
  const ExactMean exact = exact_mean(problem);

  StudyResult r;
  r.table = ConvergenceTable("dt", error_fields(spec.algorithms));
  for (int k : spec.dt_divisors) {
    schemes::SchemeConfig cfg = spec.scheme;
    cfg.dt = cfg.T / k;
    std::vector<double> errs;
    for (auto alg : spec.algorithms) {
      ErrorAccumulator acc{&exact, cfg.dt};
      schemes::RunOptions opts;
      opts.record_energy = false;
      opts.on_step = std::ref(acc);
      note_run(r, annotated("dt=T/" + std::to_string(k), [&] {
        return schemes::run_transient(alg, cfg, plan, problem, disc, opts);
      }));
      for (double e : acc.errors()) errs.push_back(e);
    }
    r.table.add_row(cfg.dt, errs);
  }
  r.wall_seconds = seconds_since(start);
  if (write_outputs) emit_study(r, spec, plan, "dt");
  return r;
}

StudyResult run_spatial_study(const ExperimentSpec& spec, bool write_outputs) {
  validate(spec);
  const auto start = Clock::now();
  const auto plan = mms_plan(spec);

  StudyResult r;
  r.table = ConvergenceTable("h", error_fields(spec.algorithms));
  for (int n : spec.mesh_ladder) {
    const auto problem = schemes::make_mms_problem(square_mesh(n, spec.barycentric), plan, spec.scheme.s);
    auto disc = std::make_shared<const schemes::Discretization>(schemes::make_discretization(problem.mesh, spec.scheme.pair));
    const ExactMean exact = exact_mean(problem);
    std::vector<double> errs;
    for (auto alg : spec.algorithms) {
      ErrorAccumulator acc{&exact, spec.scheme.dt};
      schemes::RunOptions opts;
      opts.record_energy = false;
      opts.on_step = std::ref(acc);
      note_run(r, annotated("h=1/" + std::to_string(n), [&] {
        return schemes::run_transient(alg, spec.scheme, plan, problem, disc, opts);
      }));
      for (double e : acc.errors()) errs.push_back(e);
    }
    r.table.add_row(1.0 / n, errs);
  }
  r.wall_seconds = seconds_since(start);
  if (write_outputs) emit_study(r, spec, plan, "h");
  return r;
}

// ============================================================================
// Benchmarks
// ============================================================================

std::vector<double> BenchmarkResult::final_energies(Algorithm algorithm) const {
  std::vector<double> out;
  for (const auto& run : runs)
    if (run.algorithm == algorithm && !run.result.mean_energy.empty()) out.push_back(run.result.mean_energy.back());
  return out;
}

double boundary_flux(const fem::FeFunction& u, mesh::BoundaryTag tag) {
  const auto& m = u.space->mesh();
  static const double gx[3] = {0.5 - std::sqrt(0.15), 0.5, 0.5 + std::sqrt(0.15)};
  static const double gw[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  double flux = 0.0;
  for (int t = 0; t < m.n_triangles(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const int be = m.boundary_edge_of(m.triangle_edges(t)[k]);
      if (be < 0 || !mesh::tag_matches(m.boundary_edges()[be].tag, tag)) continue;
      const int a = k, b = (k + 1) % 3;
      const Point& pa = m.vertex(m.triangle(t)[a]);
      const Point& pb = m.vertex(m.triangle(t)[b]);
      // Counter-clockwise triangles: (dy, -dx) points outward; its length is the edge length.
      const Vec2 n{pb.y - pa.y, pa.x - pb.x};
      for (int q = 0; q < 3; ++q) {
        std::array<double, 3> lambda{0.0, 0.0, 0.0};
        lambda[a] = 1.0 - gx[q];
        lambda[b] = gx[q];
        flux += gw[q] * dot(u.vector_value(t, lambda), n);
      }
    }
  }
  return flux;
}

namespace {

using ProblemFactory = schemes::Problem (*)(std::shared_ptr<const mesh::TriMesh>, const stochastic::StochasticPlan&, double);

BenchmarkResult run_benchmark(const ExperimentSpec& spec, bool write_outputs, std::shared_ptr<const mesh::TriMesh> mesh,
                              const stochastic::StochasticPlan& plan, ProblemFactory factory,
                              const std::vector<double>& s_values) {
  validate(spec);
  const auto start = Clock::now();
  const std::string stem(to_string(spec.kind));
  std::filesystem::path dir;
  if (write_outputs) {
    dir = prepare_output(spec);
    write_plan(dir, plan, "plan.txt");
  }
  auto disc = std::make_shared<const schemes::Discretization>(schemes::make_discretization(mesh, spec.scheme.pair));

  BenchmarkResult r;
  std::vector<Series> energy_series;
  for (double s : s_values) {
    const auto problem = factory(mesh, plan, s);
    schemes::SchemeConfig cfg = spec.scheme;
    cfg.s = s;
    const std::string tag = "s" + fmt("%g", s);
    for (auto alg : spec.algorithms) {
      const std::string label = std::string(schemes::to_string(alg)) + "_" + tag;
      schemes::RunOptions opts;
      if (write_outputs && spec.snapshot_every > 0) {
        opts.on_step = [&](const schemes::StepView& v) {
          if (v.n % spec.snapshot_every == 0)
            schemes::write_snapshot(dir / (stem + "_" + label + "_n" + std::to_string(v.n) + ".vtk"), v.state,
                                    v.algorithm, v.disc, s);
        };
      }
      BenchmarkRun run{s, alg, annotated(stem + " " + label, [&] {
                         return schemes::run_transient(alg, cfg, plan, problem, disc, opts);
                       })};
      r.invariants_ok = r.invariants_ok && run.result.invariants_ok();
      add_warnings(r.warnings, run.result.stability.warnings);
      if (write_outputs) {
        schemes::write_energy_csv(dir / ("energy_" + label + ".csv"), run.result);
        schemes::write_snapshot(dir / (stem + "_" + label + "_final.vtk"), run.result.final_state, alg, *disc, s);
        energy_series.push_back({label, run.result.times, run.result.mean_energy});
      }
      r.runs.push_back(std::move(run));
    }
  }

  // Pairwise coupled-vs-spp energy gap per s.
  for (double s : s_values) {
    const schemes::RunResult *c = nullptr, *p = nullptr;
    for (const auto& run : r.runs) {
      if (run.s != s) continue;
      (run.algorithm == Algorithm::coupled ? c : p) = &run.result;
    }
    if (!c || !p) continue;
    const double scale = *std::max_element(c->mean_energy.begin(), c->mean_energy.end());
    double gap = 0.0;
    for (std::size_t n = 0; n < c->mean_energy.size(); ++n)
      gap = std::max(gap, std::abs(c->mean_energy[n] - p->mean_energy[n]));
    if (scale > 0.0) r.max_energy_gap = std::max(r.max_energy_gap, gap / scale);
  }

  if (write_outputs && spec.write_plots)
    write_line_chart(dir / (stem + "_energy.svg"), energy_series, {stem + " weighted mean energy", "t", "energy"});
  r.wall_seconds = seconds_since(start);
  return r;
}

}  // namespace

BenchmarkResult run_channel(const ExperimentSpec& spec, bool write_outputs) {
  const auto plan = channel_plan(spec);
  auto r = run_benchmark(spec, write_outputs, channel_mesh(spec.channel_resolution, spec.barycentric), plan,
                         &schemes::make_channel_problem, {spec.scheme.s});
  if (!r.runs.empty()) {
    const auto& last = r.runs.back().result;
    const auto u = stochastic::ensemble_mean(schemes::primitive_velocities(last.final_state, r.runs.back().algorithm));
    r.inflow_flux = -boundary_flux(u, mesh::BoundaryTag::inflow);
    r.outflow_flux = boundary_flux(u, mesh::BoundaryTag::outflow);
  }
  return r;
}

BenchmarkResult run_cavity(const ExperimentSpec& spec, bool write_outputs) {
  const auto plan = cavity_plan(spec);
  return run_benchmark(spec, write_outputs, cavity_mesh(spec.mesh_n, spec.barycentric), plan,
                       &schemes::make_cavity_problem, spec.s_values);
}

}  // namespace mhduq::harness
