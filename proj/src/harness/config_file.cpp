#include "mhduq/harness/config_file.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

namespace mhduq::harness {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

double parse_double(const std::string& s, int line) {
  double x = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || end != s.data() + s.size()) throw ConfigError("line " + std::to_string(line) + ": '" + s + "' is not a number", line);
  return x;
}

long long parse_integer(const std::string& s, int line) {
  long long x = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || end != s.data() + s.size()) throw ConfigError("line " + std::to_string(line) + ": '" + s + "' is not an integer", line);
  return x;
}

bool parse_bool(const std::string& s, int line) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("line " + std::to_string(line) + ": '" + s + "' is not a boolean", line);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T, class F>
std::string join(const std::vector<T>& xs, F fmt) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + fmt(xs[i]);
  return out;
}

std::string_view krylov_name(linalg::KrylovMethod m) { return m == linalg::KrylovMethod::cg ? "cg" : "gmres"; }

std::string_view preconditioner_name(linalg::PreconditionerKind p) {
  switch (p) {
    case linalg::PreconditionerKind::none: return "none";
    case linalg::PreconditionerKind::jacobi: return "jacobi";
    case linalg::PreconditionerKind::ilu0: return "ilu0";
  }
  return "none";
}

/// Wraps an exception from a value parser into a ConfigError with line info.
template <class F>
auto guarded(F f, const std::string& key, int line) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("line " + std::to_string(line) + ": bad value for " + key + ": " + e.what(), line);
  }
}

struct KeyHandler {
  std::string key;
  std::function<void(ExperimentSpec&, const std::string&, int)> set;
  std::function<std::string(const ExperimentSpec&)> get;
};

const std::vector<KeyHandler>& handlers() {
  using S = ExperimentSpec;
  static const std::vector<KeyHandler> table = {
      {"experiment.kind", [](S& s, const std::string& v, int l) { s.kind = guarded([&] { return parse_experiment_kind(v); }, "experiment.kind", l); },
       [](const S& s) { return std::string(to_string(s.kind)); }},
      {"experiment.output_dir", [](S& s, const std::string& v, int) { s.output_dir = v; }, [](const S& s) { return s.output_dir; }},
      {"experiment.write_plots", [](S& s, const std::string& v, int l) { s.write_plots = parse_bool(v, l); },
       [](const S& s) { return std::string(s.write_plots ? "true" : "false"); }},
      {"experiment.snapshot_every", [](S& s, const std::string& v, int l) { s.snapshot_every = static_cast<int>(parse_integer(v, l)); },
       [](const S& s) { return std::to_string(s.snapshot_every); }},

      {"scheme.dt", [](S& s, const std::string& v, int l) { s.scheme.dt = parse_double(v, l); }, [](const S& s) { return format_double(s.scheme.dt); }},
      {"scheme.T", [](S& s, const std::string& v, int l) { s.scheme.T = parse_double(v, l); }, [](const S& s) { return format_double(s.scheme.T); }},
      {"scheme.gamma", [](S& s, const std::string& v, int l) { s.scheme.gamma = parse_double(v, l); },
       [](const S& s) { return format_double(s.scheme.gamma); }},
      {"scheme.mu", [](S& s, const std::string& v, int l) { s.scheme.mu = parse_double(v, l); }, [](const S& s) { return format_double(s.scheme.mu); }},
      {"scheme.s", [](S& s, const std::string& v, int l) { s.scheme.s = parse_double(v, l); }, [](const S& s) { return format_double(s.scheme.s); }},
      {"scheme.pair", [](S& s, const std::string& v, int l) { s.scheme.pair = guarded([&] { return schemes::parse_element_pair(v); }, "scheme.pair", l); },
       [](const S& s) { return std::string(schemes::to_string(s.scheme.pair)); }},
      {"scheme.coupled_graddiv", [](S& s, const std::string& v, int l) { s.scheme.coupled_graddiv = parse_bool(v, l); },
       [](const S& s) { return std::string(s.scheme.coupled_graddiv ? "true" : "false"); }},
      {"scheme.projection_boundary",
       [](S& s, const std::string& v, int l) {
         s.scheme.projection_boundary = guarded([&] { return schemes::parse_projection_boundary(v); }, "scheme.projection_boundary", l);
       },
       [](const S& s) { return std::string(schemes::to_string(s.scheme.projection_boundary)); }},
      {"scheme.monitor_energy", [](S& s, const std::string& v, int l) { s.scheme.monitor_energy = parse_bool(v, l); },
       [](const S& s) { return std::string(s.scheme.monitor_energy ? "true" : "false"); }},

      {"solver.kind", [](S& s, const std::string& v, int l) { s.scheme.solver.kind = guarded([&] { return schemes::parse_solver_kind(v); }, "solver.kind", l); },
       [](const S& s) { return std::string(schemes::to_string(s.scheme.solver.kind)); }},
      {"solver.method",
       [](S& s, const std::string& v, int l) { s.scheme.solver.iterative.method = guarded([&] { return linalg::parse_krylov_method(v); }, "solver.method", l); },
       [](const S& s) { return std::string(krylov_name(s.scheme.solver.iterative.method)); }},
      {"solver.preconditioner",
       [](S& s, const std::string& v, int l) {
         s.scheme.solver.iterative.preconditioner = guarded([&] { return linalg::parse_preconditioner(v); }, "solver.preconditioner", l);
       },
       [](const S& s) { return std::string(preconditioner_name(s.scheme.solver.iterative.preconditioner)); }},
      {"solver.tol", [](S& s, const std::string& v, int l) { s.scheme.solver.iterative.tol = parse_double(v, l); },
       [](const S& s) { return format_double(s.scheme.solver.iterative.tol); }},
      {"solver.max_iterations", [](S& s, const std::string& v, int l) { s.scheme.solver.iterative.max_iterations = static_cast<int>(parse_integer(v, l)); },
       [](const S& s) { return std::to_string(s.scheme.solver.iterative.max_iterations); }},
      {"solver.restart", [](S& s, const std::string& v, int l) { s.scheme.solver.iterative.restart = static_cast<int>(parse_integer(v, l)); },
       [](const S& s) { return std::to_string(s.scheme.solver.iterative.restart); }},

      {"plan.n_sc", [](S& s, const std::string& v, int l) { s.n_sc = static_cast<int>(parse_integer(v, l)); }, [](const S& s) { return std::to_string(s.n_sc); }},
      {"plan.epsilon", [](S& s, const std::string& v, int l) { s.epsilon = parse_double(v, l); }, [](const S& s) { return format_double(s.epsilon); }},
      {"plan.nu_min", [](S& s, const std::string& v, int l) { s.nu_bounds[0] = parse_double(v, l); }, [](const S& s) { return format_double(s.nu_bounds[0]); }},
      {"plan.nu_max", [](S& s, const std::string& v, int l) { s.nu_bounds[1] = parse_double(v, l); }, [](const S& s) { return format_double(s.nu_bounds[1]); }},
      {"plan.nu_m_min", [](S& s, const std::string& v, int l) { s.nu_m_bounds[0] = parse_double(v, l); },
       [](const S& s) { return format_double(s.nu_m_bounds[0]); }},
      {"plan.nu_m_max", [](S& s, const std::string& v, int l) { s.nu_m_bounds[1] = parse_double(v, l); },
       [](const S& s) { return format_double(s.nu_m_bounds[1]); }},
      {"plan.seed", [](S& s, const std::string& v, int l) { s.seed = static_cast<std::uint64_t>(parse_integer(v, l)); },
       [](const S& s) { return std::to_string(s.seed); }},
      {"plan.sparse_level", [](S& s, const std::string& v, int l) { s.sparse_level = static_cast<int>(parse_integer(v, l)); },
       [](const S& s) { return std::to_string(s.sparse_level); }},
      {"plan.kl_c", [](S& s, const std::string& v, int l) { s.kl.c = parse_double(v, l); }, [](const S& s) { return format_double(s.kl.c); }},
      {"plan.kl_length", [](S& s, const std::string& v, int l) { s.kl.correlation_length = parse_double(v, l); },
       [](const S& s) { return format_double(s.kl.correlation_length); }},
      {"plan.kl_q", [](S& s, const std::string& v, int l) { s.kl.q = static_cast<int>(parse_integer(v, l)); }, [](const S& s) { return std::to_string(s.kl.q); }},
      {"plan.kl_nu_scale", [](S& s, const std::string& v, int l) { s.kl.nu_scale = parse_double(v, l); },
       [](const S& s) { return format_double(s.kl.nu_scale); }},
      {"plan.kl_nu_m_scale", [](S& s, const std::string& v, int l) { s.kl.nu_m_scale = parse_double(v, l); },
       [](const S& s) { return format_double(s.kl.nu_m_scale); }},

      {"mesh.n", [](S& s, const std::string& v, int l) { s.mesh_n = static_cast<int>(parse_integer(v, l)); }, [](const S& s) { return std::to_string(s.mesh_n); }},
      {"mesh.barycentric", [](S& s, const std::string& v, int l) { s.barycentric = parse_bool(v, l); },
       [](const S& s) { return std::string(s.barycentric ? "true" : "false"); }},
      {"mesh.channel_resolution", [](S& s, const std::string& v, int l) { s.channel_resolution = static_cast<int>(parse_integer(v, l)); },
       [](const S& s) { return std::to_string(s.channel_resolution); }},

      {"study.gamma_ladder",
       [](S& s, const std::string& v, int l) {
         s.gamma_ladder.clear();
         for (const auto& x : split_list(v)) s.gamma_ladder.push_back(parse_double(x, l));
       },
       [](const S& s) { return join(s.gamma_ladder, format_double); }},
      {"study.dt_divisors",
       [](S& s, const std::string& v, int l) {
         s.dt_divisors.clear();
         for (const auto& x : split_list(v)) s.dt_divisors.push_back(static_cast<int>(parse_integer(x, l)));
       },
       [](const S& s) { return join(s.dt_divisors, [](int x) { return std::to_string(x); }); }},
      {"study.mesh_ladder",
       [](S& s, const std::string& v, int l) {
         s.mesh_ladder.clear();
         for (const auto& x : split_list(v)) s.mesh_ladder.push_back(static_cast<int>(parse_integer(x, l)));
       },
       [](const S& s) { return join(s.mesh_ladder, [](int x) { return std::to_string(x); }); }},
      {"study.s_values",
       [](S& s, const std::string& v, int l) {
         s.s_values.clear();
         for (const auto& x : split_list(v)) s.s_values.push_back(parse_double(x, l));
       },
       [](const S& s) { return join(s.s_values, format_double); }},
      {"study.algorithms",
       [](S& s, const std::string& v, int l) {
         s.algorithms.clear();
         for (const auto& x : split_list(v))
           s.algorithms.push_back(guarded([&] { return schemes::parse_algorithm(x); }, "study.algorithms", l));
       },
       [](const S& s) { return join(s.algorithms, [](schemes::Algorithm a) { return std::string(schemes::to_string(a)); }); }},
  };
  return table;
}

const KeyHandler* find_handler(const std::string& key) {
  for (const auto& h : handlers())
    if (h.key == key) return &h;
  return nullptr;
}

template <class T>
void check_monotone(const std::vector<T>& xs, const char* what) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1])) throw ConfigError(std::string(what) + " must be strictly increasing", 0);
}

}  // namespace

// ============================================================================
// Raw parsing
// ============================================================================

RawConfig parse_raw_config(std::string_view text) {
  RawConfig raw;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto cut = line.find_first_of("#;");
    if (cut != std::string::npos) line.erase(cut);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError("line " + std::to_string(number) + ": unterminated section header", number);
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      if (section.empty()) throw ConfigError("line " + std::to_string(number) + ": empty section name", number);
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number) + ": expected key = value", number);
    if (section.empty()) throw ConfigError("line " + std::to_string(number) + ": key outside any [section]", number);
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(number) + ": empty key", number);
    const std::string full = section + "." + key;
    if (raw.values.count(full)) throw ConfigError("line " + std::to_string(number) + ": duplicate key " + full, number);
    raw.values[full] = value;
    raw.lines[full] = number;
  }
  return raw;
}

// ============================================================================
// Experiment spec
// ============================================================================

std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::gamma_study: return "gamma_study";
    case ExperimentKind::temporal_study: return "temporal_study";
    case ExperimentKind::spatial_study: return "spatial_study";
    case ExperimentKind::channel: return "channel";
    case ExperimentKind::cavity: return "cavity";
  }
  return "gamma_study";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  for (auto k : {ExperimentKind::gamma_study, ExperimentKind::temporal_study, ExperimentKind::spatial_study,
                 ExperimentKind::channel, ExperimentKind::cavity})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown experiment kind '" + std::string(name) + "'");
}

bool ExperimentSpec::operator==(const ExperimentSpec& other) const {
  for (const auto& h : handlers())
    if (h.get(*this) != h.get(other)) return false;
  return true;
}

ExperimentSpec defaults_for(ExperimentKind kind) {
  ExperimentSpec s;
  s.kind = kind;
  s.output_dir = "out/" + std::string(to_string(kind));
  auto& c = s.scheme;
  switch (kind) {
    case ExperimentKind::gamma_study:
      c.dt = 0.1;
      c.T = 1.0;
      s.mesh_n = 16;
      s.n_sc = 10;
      break;
    case ExperimentKind::temporal_study:
      c.T = 1.0;
      c.dt = 0.25;
      c.gamma = 500.0;
      c.projection_boundary = schemes::ProjectionBoundary::data_normal;
      s.mesh_n = 32;
      s.n_sc = 10;
      s.algorithms = {schemes::Algorithm::spp};
      break;
    case ExperimentKind::spatial_study:
      c.T = 0.001;
      c.dt = 0.001 / 8;
      c.gamma = 1e6;
      c.projection_boundary = schemes::ProjectionBoundary::data_normal;
      s.n_sc = 10;
      s.algorithms = {schemes::Algorithm::spp};
      break;
    case ExperimentKind::channel:
      c.dt = 0.05;
      c.T = 40.0;
      c.gamma = 1e5;
      c.s = 0.001;
      s.n_sc = 20;
      s.nu_bounds = {0.0009, 0.0011};
      s.nu_m_bounds = {0.009, 0.011};
      s.barycentric = false;
      break;
    case ExperimentKind::cavity:
      c.dt = 5.0;
      c.T = 600.0;
      c.gamma = 1e4;
      s.mesh_n = 16;
      s.sparse_level = 1;
      break;
  }
  return s;
}

const std::vector<std::string>& required_keys() {
  static const std::vector<std::string> keys = {"experiment.kind"};
  return keys;
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& h : handlers()) k.push_back(h.key);
    return k;
  }();
  return keys;
}

void apply_setting(ExperimentSpec& spec, const std::string& key, const std::string& value, int line) {
  const KeyHandler* h = find_handler(key);
  if (!h) throw ConfigError((line ? "line " + std::to_string(line) + ": " : std::string()) + "unknown key " + key, line);
  h->set(spec, value, line);
}

ExperimentSpec parse_experiment(std::string_view text) {
  const RawConfig raw = parse_raw_config(text);
  std::string missing;
  for (const auto& k : required_keys())
    if (!raw.values.count(k)) missing += (missing.empty() ? "" : ", ") + k;
  if (!missing.empty()) throw ConfigError("missing required keys: " + missing, 0);
  for (const auto& [key, value] : raw.values)
    if (!find_handler(key)) throw ConfigError("line " + std::to_string(raw.lines.at(key)) + ": unknown key " + key, raw.lines.at(key));

  const int kind_line = raw.lines.at("experiment.kind");
  ExperimentSpec spec = defaults_for(
      guarded([&] { return parse_experiment_kind(raw.values.at("experiment.kind")); }, "experiment.kind", kind_line));
  for (const auto& [key, value] : raw.values) apply_setting(spec, key, value, raw.lines.at(key));
  return spec;
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string(), 0);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment(buf.str());
}

std::string effective_config(const ExperimentSpec& spec) {
  std::string out = "# effective configuration (all resolved parameters)\n";
  std::string section;
  for (const auto& h : handlers()) {
    const auto dot = h.key.find('.');
    const std::string sec = h.key.substr(0, dot);
    if (sec != section) {
      out += (section.empty() ? "" : "\n") + ("[" + sec + "]\n");
      section = sec;
    }
    out += h.key.substr(dot + 1) + " = " + h.get(spec) + "\n";
  }
  return out;
}

void validate(const ExperimentSpec& spec) {
  check_monotone(spec.gamma_ladder, "study.gamma_ladder");
  check_monotone(spec.dt_divisors, "study.dt_divisors");
  check_monotone(spec.mesh_ladder, "study.mesh_ladder");
  check_monotone(spec.s_values, "study.s_values");
  if (spec.n_sc < 1) throw ConfigError("plan.n_sc must be positive", 0);
  if (spec.algorithms.empty()) throw ConfigError("study.algorithms is empty", 0);
  try {
    spec.scheme.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid scheme settings: ") + e.what(), 0);
  }
}

}  // namespace mhduq::harness
