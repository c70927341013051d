#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mhduq/schemes/config.hpp"
#include "mhduq/stochastic/kl_field.hpp"

namespace mhduq::harness {

/// Parse failure with the offending line (0 when not tied to a line).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Raw `[section]` / `key = value` content. Keys are stored as "section.key".
struct RawConfig {
  std::map<std::string, std::string> values;
  std::map<std::string, int> lines;
};

/// '#' and ';' start comments; blank lines are ignored; keys before any section header are rejected.
RawConfig parse_raw_config(std::string_view text);

enum class ExperimentKind { gamma_study, temporal_study, spatial_study, channel, cavity };

std::string_view to_string(ExperimentKind k);
ExperimentKind parse_experiment_kind(std::string_view name);

/// Everything an experiment needs. Defaults depend on the kind (see defaults_for()).
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::gamma_study;
  std::string output_dir = "out";
  bool write_plots = true;
  int snapshot_every = 0;  ///< 0: final snapshot only

  // [plan]
  int n_sc = 10;
  double epsilon = 0.01;
  std::array<double, 2> nu_bounds{0.009, 0.011};
  std::array<double, 2> nu_m_bounds{0.0009, 0.0011};
  std::uint64_t seed = 2024;
  int sparse_level = 1;
  stochastic::KlParameters kl;

  // [mesh]
  int mesh_n = 16;  ///< cells per side of the square meshes before refinement
  bool barycentric = true;
  int channel_resolution = 2;  ///< cells per unit length

  // [study]
  std::vector<double> gamma_ladder{1, 10, 100, 1000};
  std::vector<int> dt_divisors{4, 8, 16, 32, 64};  ///< dt = T / k
  std::vector<int> mesh_ladder{4, 8, 16, 32};      ///< h = 1 / n
  std::vector<double> s_values{0.001, 0.01, 0.1, 1.0};
  std::vector<schemes::Algorithm> algorithms{schemes::Algorithm::coupled, schemes::Algorithm::spp};

  schemes::SchemeConfig scheme;

  bool operator==(const ExperimentSpec& other) const;
};

/// Desk-scale defaults of each experiment kind.
ExperimentSpec defaults_for(ExperimentKind kind);

/// Keys every config file must set.
const std::vector<std::string>& required_keys();
/// Every accepted "section.key".
const std::vector<std::string>& known_keys();

/// Kind defaults overridden by the file content. Unknown keys, bad values and
/// missing required keys throw ConfigError.
ExperimentSpec parse_experiment(std::string_view text);
ExperimentSpec load_experiment(const std::filesystem::path& path);

/// Applies one "section.key" = value override (used by CLI flags).
void apply_setting(ExperimentSpec& spec, const std::string& key, const std::string& value, int line = 0);

/// Effective-config text: every key, round-trips through parse_experiment().
std::string effective_config(const ExperimentSpec& spec);

/// Checks ladders are strictly monotone and the scheme config is valid.
void validate(const ExperimentSpec& spec);

}  // namespace mhduq::harness
