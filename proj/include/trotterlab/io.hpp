#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "trotterlab/audit.hpp"
#include "trotterlab/convergence.hpp"
#include "trotterlab/cutoff.hpp"

namespace trotterlab {

struct ConfigError : std::runtime_error {
  std::string path;
  ConfigError(std::string p, const std::string& msg)
      : std::runtime_error("config error at " + p + ": " + msg), path(std::move(p)) {}
};

struct StateSpec {
  std::string kind = "hydrogen-ground";  // gaussian | radial-packet | random
  double sigma = 1.0;
  double center = 0.0;
  std::vector<double> boost;
  double decay = 4.0;
};

struct PotentialSpec {
  std::string kind = "zero";  // coulomb-one-body | coulomb-pairwise | gaussian-well
  double c = 0.0;
  std::vector<double> cjk;
  double depth = 0.0, width = 1.0;
};

struct GridSpecConfig {
  std::string kind = "radial-1d";
  std::vector<int> dims;
  std::vector<double> extents;
  bool offset = true;
  int particles = 1;
};

struct StudySpec {
  std::string kind = "global";  // or "local"
  double T = 1.0;
  int k_min = 3;
  int k_max = 12;
};

struct ErrrepSpec {
  double t = 0.1;
  std::vector<int> nodes = {8, 16, 32};
  int states = 20;
  double decay = 4.0;
  double tol = 1e-6;
};

struct AuditSpec {
  std::vector<std::string> suite;
  int samples = 500;
  int pair_samples = 200;
  double margin = 1.05;
  double decay = 4.0;
  std::vector<double> cjk = {1.0};
  std::optional<GridSpecConfig> pair_grid;
  int cutoff_resolution = 20001;
  double s = 0.25;
  int power_iters = 60;
};

struct H2TraceSpec {
  double T = 2.0;
  int samples = 21;
  std::optional<StateSpec> state;
};

struct Config {
  std::string command;
  std::uint64_t seed = 1;
  GridSpecConfig grid;
  PotentialSpec potential;
  StateSpec state;
  StudySpec study;
  ErrrepSpec errrep;
  AuditSpec audit;
  H2TraceSpec h2trace;
  std::string raw_json;  // canonical dump used for hashing
};

Config parse_config(const std::string& json_text);
Config load_config_file(const std::string& path);
Config load_preset(const std::string& name);
std::vector<std::string> preset_names();
std::string preset_text(const std::string& name);

GridSpec build_grid(const GridSpecConfig& cfg);
Potential build_potential(const PotentialSpec& cfg, const GridSpec& grid);
Wavefunction build_state(const StateSpec& cfg, const GridSpec& grid, std::uint64_t seed);

struct ManifestOutput {
  std::string path;
  std::uint64_t fnv64 = 0;
};

struct RunManifest {
  std::string tool_version;
  std::string command;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string grid_desc;
  double timing_ms = 0.0;
  int threads = 1;
  std::vector<ManifestOutput> outputs;
};

void write_manifest(const RunManifest& man, const std::string& path);
bool verify_manifest(const std::string& path);  // rehashes every referenced output

std::uint64_t file_fnv64(const std::string& path);

struct CliOptions {
  std::string config_path;
  std::string preset;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  bool svg = false;
  int N = 2;
  double c0 = 1.0;
};

int cmd_rate_study(const CliOptions& opt);
int cmd_audit(const CliOptions& opt);
int cmd_bounds(const CliOptions& opt);
int cmd_errrep_check(const CliOptions& opt);
int cmd_h2_trace(const CliOptions& opt);

int configured_threads();  // honors TROTTERLAB_THREADS

// exit-code contract
inline constexpr int exit_pass = 0;
inline constexpr int exit_error = 1;
inline constexpr int exit_unreliable = 2;
inline constexpr int exit_warnings = 3;

}  // namespace trotterlab
