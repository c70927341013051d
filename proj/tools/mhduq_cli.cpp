// mhduq: command-line driver for the convergence studies and benchmarks.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "mhduq/harness/config_file.hpp"
#include "mhduq/harness/experiments.hpp"
#include "mhduq/mesh/vtk.hpp"

using namespace mhduq;

namespace {

struct CommonFlags {
  std::string config;
  std::vector<std::string> sets;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string output;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "Experiment config file ([section] key = value)")->check(CLI::ExistingFile);
  cmd->add_option("--set", f.sets, "Override a key, e.g. --set scheme.gamma=1e4 (repeatable)");
  cmd->add_option("--seed", f.seed, "Sampling seed (plan.seed)");
  cmd->add_option("--output", f.output, "Output directory (experiment.output_dir)");
}

harness::ExperimentSpec resolve_spec(harness::ExperimentKind kind, const CommonFlags& f, bool has_seed) {
  harness::ExperimentSpec spec = harness::defaults_for(kind);
  if (!f.config.empty()) {
    spec = harness::load_experiment(f.config);
    if (spec.kind != kind)
      throw harness::ConfigError("config file describes a '" + std::string(harness::to_string(spec.kind)) +
                                     "' experiment, not '" + std::string(harness::to_string(kind)) + "'",
                                 0);
  }
  for (const auto& kv : f.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw harness::ConfigError("--set expects key=value, got '" + kv + "'", 0);
    harness::apply_setting(spec, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (has_seed) spec.seed = f.seed;
  if (!f.output.empty()) spec.output_dir = f.output;
  harness::validate(spec);
  return spec;
}

int report_study(const harness::StudyResult& r, const harness::ExperimentSpec& spec) {
  r.table.print(std::cout);
  std::printf("projection: max norm ratio %.12f, max divergence ratio %.3e\n", r.max_projection_ratio, r.max_div_ratio);
  for (const auto& w : r.warnings) std::printf("warning: %s\n", w.c_str());
  std::printf("wall time %.1f s, outputs in %s\n", r.wall_seconds, harness::resolve_output_dir(spec).string().c_str());
  std::printf("invariants: %s\n", r.invariants_ok ? "ok" : "VIOLATED");
  return r.invariants_ok ? 0 : 1;
}

int report_bench(const harness::BenchmarkResult& r, const harness::ExperimentSpec& spec) {
  for (const auto& run : r.runs) {
    const auto& mon = run.result.stability.projection;
    std::printf("%-8s s=%-6g steps=%d final mean energy %.6e  projection ratio %.6f div %.2e  %.1f s\n",
                std::string(schemes::to_string(run.algorithm)).c_str(), run.s, run.result.steps,
                run.result.mean_energy.empty() ? 0.0 : run.result.mean_energy.back(), mon.max_norm_ratio,
                mon.max_div_ratio, run.result.wall_seconds);
  }
  std::printf("max coupled-vs-spp energy gap: %.3e\n", r.max_energy_gap);
  if (spec.kind == harness::ExperimentKind::channel)
    std::printf("volume flux: inflow %.6f outflow %.6f\n", r.inflow_flux, r.outflow_flux);
  for (const auto& w : r.warnings) std::printf("warning: %s\n", w.c_str());
  std::printf("wall time %.1f s, outputs in %s\n", r.wall_seconds, harness::resolve_output_dir(spec).string().c_str());
  std::printf("invariants: %s\n", r.invariants_ok ? "ok" : "VIOLATED");
  return r.invariants_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic MHD ensemble simulator (coupled and penalty-projection schemes)"};
  app.require_subcommand(1);

  CommonFlags flags;
  int exit_code = 0;

  // === mms ===
  auto* mms = app.add_subcommand("mms", "Manufactured-solution studies");
  mms->require_subcommand(1);
  struct Study {
    const char* name;
    const char* help;
    harness::ExperimentKind kind;
  };
  const Study studies[] = {
      {"gamma", "Coupled vs penalty-projection gap over the gamma ladder", harness::ExperimentKind::gamma_study},
      {"temporal", "Time-step convergence against the exact ensemble mean", harness::ExperimentKind::temporal_study},
      {"spatial", "Mesh convergence against the exact ensemble mean", harness::ExperimentKind::spatial_study},
  };
  for (const auto& st : studies) {
    auto* cmd = mms->add_subcommand(st.name, st.help);
    add_common(cmd, flags);
    const auto kind = st.kind;
    cmd->callback([&, kind, cmd] {
      const auto spec = resolve_spec(kind, flags, cmd->count("--seed") > 0);
      harness::StudyResult r;
      if (kind == harness::ExperimentKind::gamma_study) r = harness::run_gamma_study(spec);
      if (kind == harness::ExperimentKind::temporal_study) r = harness::run_temporal_study(spec);
      if (kind == harness::ExperimentKind::spatial_study) r = harness::run_spatial_study(spec);
      exit_code = report_study(r, spec);
    });
  }

  // === bench ===
  auto* bench = app.add_subcommand("bench", "Channel and cavity benchmarks");
  bench->require_subcommand(1);
  for (auto kind : {harness::ExperimentKind::channel, harness::ExperimentKind::cavity}) {
    const bool channel = kind == harness::ExperimentKind::channel;
    auto* cmd = bench->add_subcommand(channel ? "channel" : "cavity",
                                      channel ? "Flow past a step in a channel" : "Regularized lid-driven cavity s-sweep");
    add_common(cmd, flags);
    cmd->callback([&, kind, cmd, channel] {
      const auto spec = resolve_spec(kind, flags, cmd->count("--seed") > 0);
      const auto r = channel ? harness::run_channel(spec) : harness::run_cavity(spec);
      exit_code = report_bench(r, spec);
    });
  }

  // === mesh export ===
  auto* mesh_cmd = app.add_subcommand("mesh", "Mesh utilities");
  mesh_cmd->require_subcommand(1);
  auto* exp = mesh_cmd->add_subcommand("export", "Write a benchmark mesh as legacy VTK");
  std::string domain = "square", mesh_out = "mesh.vtk";
  int n = 16;
  bool bary = false;
  exp->add_option("--domain", domain, "square, cavity or channel")->check(CLI::IsMember({"square", "cavity", "channel"}));
  exp->add_option("-n,--cells", n, "Cells per side (square, cavity) or per unit length (channel)")->check(CLI::PositiveNumber);
  exp->add_flag("--barycentric", bary, "Apply barycentric refinement");
  exp->add_option("--output", mesh_out, "Output .vtk path");
  exp->callback([&] {
    std::shared_ptr<const mesh::TriMesh> m = domain == "square"   ? harness::square_mesh(n, bary)
                                             : domain == "cavity" ? harness::cavity_mesh(n, bary)
                                                                  : harness::channel_mesh(n, bary);
    mesh::write_vtk(mesh_out, *m);
    std::printf("%s: %d vertices, %d triangles, h = %.4g -> %s\n", domain.c_str(), m->n_vertices(), m->n_triangles(),
                m->h(), mesh_out.c_str());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const harness::ConfigError& e) {
    if (e.line() > 0)
      std::fprintf(stderr, "config error (line %d): %s\n", e.line(), e.what());
    else
      std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return exit_code;
}
