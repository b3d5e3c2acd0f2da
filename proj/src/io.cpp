#include "trotterlab/io.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "trotterlab/version.hpp"

extern "C" void openblas_set_num_threads(int);

namespace trotterlab {

using nlohmann::json;

namespace {

const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) throw ConfigError(path + "." + key, "missing field");
  return j.at(key);
}

double num_at(const json& j, const std::string& key, const std::string& path, double dflt,
              bool required = false) {
  if (!j.contains(key)) {
    if (required) throw ConfigError(path + "." + key, "missing field");
    return dflt;
  }
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(path + "." + key, "expected a number");
  return v.get<double>();
}

std::string str_at(const json& j, const std::string& key, const std::string& path,
                   const std::string& dflt, bool required = false) {
  if (!j.contains(key)) {
    if (required) throw ConfigError(path + "." + key, "missing field");
    return dflt;
  }
  const json& v = j.at(key);
  if (!v.is_string()) throw ConfigError(path + "." + key, "expected a string");
  return v.get<std::string>();
}

StateSpec parse_state(const json& j, const std::string& path) {
  StateSpec s;
  s.kind = str_at(j, "kind", path, s.kind, true);
  s.sigma = num_at(j, "sigma", path, s.sigma);
  s.center = num_at(j, "center", path, s.center);
  s.decay = num_at(j, "decay", path, s.decay);
  if (j.contains("boost")) {
    if (!j.at("boost").is_array()) throw ConfigError(path + ".boost", "expected an array");
    for (const auto& v : j.at("boost")) s.boost.push_back(v.get<double>());
  }
  return s;
}

GridSpecConfig parse_grid(const json& j, const std::string& path) {
  GridSpecConfig g;
  g.kind = str_at(j, "kind", path, g.kind, true);
  const json& dims = require(j, "dims", path);
  if (!dims.is_array() || dims.empty()) throw ConfigError(path + ".dims", "expected a nonempty array");
  for (const auto& v : dims) {
    if (!v.is_number_integer()) throw ConfigError(path + ".dims", "expected integers");
    g.dims.push_back(v.get<int>());
  }
  const json& ext = require(j, "extents", path);
  if (!ext.is_array() || ext.empty())
    throw ConfigError(path + ".extents", "expected a nonempty array");
  for (const auto& v : ext) g.extents.push_back(v.get<double>());
  if (j.contains("offset")) {
    if (!j.at("offset").is_boolean()) throw ConfigError(path + ".offset", "expected a boolean");
    g.offset = j.at("offset").get<bool>();
  }
  g.particles = static_cast<int>(num_at(j, "particles", path, 1));
  return g;
}

}  // namespace

Config parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
  Config cfg;
  cfg.command = str_at(j, "command", "$", "");
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer()) throw ConfigError("$.seed", "expected an integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("grid")) cfg.grid = parse_grid(j.at("grid"), "$.grid");
  if (j.contains("potential")) {
    const json& p = j.at("potential");
    cfg.potential.kind = str_at(p, "kind", "$.potential", "zero", true);
    cfg.potential.c = num_at(p, "c", "$.potential", 0.0);
    cfg.potential.depth = num_at(p, "depth", "$.potential", 0.0);
    cfg.potential.width = num_at(p, "width", "$.potential", 1.0);
    if (p.contains("cjk")) {
      if (!p.at("cjk").is_array()) throw ConfigError("$.potential.cjk", "expected an array");
      for (const auto& v : p.at("cjk")) cfg.potential.cjk.push_back(v.get<double>());
    }
  }
  if (j.contains("state")) cfg.state = parse_state(j.at("state"), "$.state");
  if (j.contains("study")) {
    const json& s = j.at("study");
    cfg.study.kind = str_at(s, "kind", "$.study", "global");
    if (cfg.study.kind != "global" && cfg.study.kind != "local")
      throw ConfigError("$.study.kind", "expected \"global\" or \"local\"");
    cfg.study.T = num_at(s, "T", "$.study", 1.0);
    cfg.study.k_min = static_cast<int>(num_at(s, "k_min", "$.study", 3));
    cfg.study.k_max = static_cast<int>(num_at(s, "k_max", "$.study", 12));
    if (cfg.study.k_max < cfg.study.k_min)
      throw ConfigError("$.study.k_max", "ladder is empty");
  }
  if (j.contains("errrep")) {
    const json& e = j.at("errrep");
    cfg.errrep.t = num_at(e, "t", "$.errrep", 0.1);
    cfg.errrep.states = static_cast<int>(num_at(e, "states", "$.errrep", 20));
    cfg.errrep.decay = num_at(e, "decay", "$.errrep", 4.0);
    cfg.errrep.tol = num_at(e, "tol", "$.errrep", 1e-6);
    if (e.contains("nodes")) {
      cfg.errrep.nodes.clear();
      for (const auto& v : e.at("nodes")) cfg.errrep.nodes.push_back(v.get<int>());
    }
  }
  if (j.contains("audit")) {
    const json& a = j.at("audit");
    if (a.contains("suite")) {
      if (!a.at("suite").is_array()) throw ConfigError("$.audit.suite", "expected an array");
      for (const auto& v : a.at("suite")) cfg.audit.suite.push_back(v.get<std::string>());
    }
    cfg.audit.samples = static_cast<int>(num_at(a, "samples", "$.audit", 500));
    cfg.audit.pair_samples = static_cast<int>(num_at(a, "pair_samples", "$.audit", 200));
    cfg.audit.margin = num_at(a, "margin", "$.audit", 1.05);
    cfg.audit.decay = num_at(a, "decay", "$.audit", 4.0);
    cfg.audit.cutoff_resolution =
        static_cast<int>(num_at(a, "cutoff_resolution", "$.audit", 20001));
    cfg.audit.s = num_at(a, "s", "$.audit", 0.25);
    cfg.audit.power_iters = static_cast<int>(num_at(a, "power_iters", "$.audit", 60));
    if (a.contains("cjk")) {
      cfg.audit.cjk.clear();
      for (const auto& v : a.at("cjk")) cfg.audit.cjk.push_back(v.get<double>());
    }
    if (a.contains("pair_grid"))
      cfg.audit.pair_grid = parse_grid(a.at("pair_grid"), "$.audit.pair_grid");
  }
  if (j.contains("h2trace")) {
    const json& h = j.at("h2trace");
    cfg.h2trace.T = num_at(h, "T", "$.h2trace", 2.0);
    cfg.h2trace.samples = static_cast<int>(num_at(h, "samples", "$.h2trace", 21));
    if (h.contains("state")) cfg.h2trace.state = parse_state(h.at("state"), "$.h2trace.state");
  }
  cfg.raw_json = j.dump();
  return cfg;
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("$", "cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

const std::pair<const char*, const char*> kPresets[] = {
    {"hydrogen_s_wave", R"JSON({
  "command": "rate-study",
  "seed": 20240601,
  "grid": {"kind": "radial-1d", "dims": [4096], "extents": [60.0], "offset": true},
  "potential": {"kind": "coulomb-one-body", "c": -2.0},
  "state": {"kind": "hydrogen-ground"},
  "study": {"kind": "global", "T": 1.0, "k_min": 3, "k_max": 12},
  "h2trace": {"T": 2.0, "samples": 21}
})JSON"},
    {"gaussian_control", R"JSON({
  "command": "rate-study",
  "seed": 20240602,
  "grid": {"kind": "cartesian-3d", "dims": [32, 32, 32], "extents": [10.0, 10.0, 10.0], "offset": true},
  "potential": {"kind": "gaussian-well", "depth": 5.0, "width": 2.0},
  "state": {"kind": "gaussian", "sigma": 1.5, "boost": [0.7, 0.3, 0.0]},
  "study": {"kind": "global", "T": 1.0, "k_min": 3, "k_max": 12}
})JSON"},
    {"audit_default", R"JSON({
  "command": "audit",
  "seed": 20240603,
  "grid": {"kind": "cartesian-3d", "dims": [32, 32, 32], "extents": [10.0, 10.0, 10.0], "offset": true},
  "audit": {
    "suite": ["hardy", "sobolev", "y-weight", "mixed-derivative", "momentum-counting", "cutoff-pointwise"],
    "samples": 500,
    "pair_samples": 200,
    "margin": 1.05,
    "decay": 4.0,
    "pair_grid": {"kind": "tensor-3n", "dims": [8], "extents": [6.0], "offset": true, "particles": 2},
    "cutoff_resolution": 20001,
    "s": 0.25
  }
})JSON"},
    {"nbody_n2_audit", R"JSON({
  "command": "audit",
  "seed": 20240604,
  "grid": {"kind": "tensor-3n", "dims": [8], "extents": [6.0], "offset": true, "particles": 2},
  "audit": {
    "suite": ["nbody-potential", "nbody-single-pair", "power-iteration"],
    "samples": 500,
    "margin": 1.05,
    "decay": 4.0,
    "cjk": [1.0],
    "power_iters": 60
  }
})JSON"},
    {"errrep_smooth", R"JSON({
  "command": "errrep-check",
  "seed": 20240605,
  "grid": {"kind": "radial-1d", "dims": [512], "extents": [20.0], "offset": true},
  "potential": {"kind": "gaussian-well", "depth": 5.0, "width": 2.0},
  "errrep": {"t": 0.1, "nodes": [8, 16, 32], "states": 20, "decay": 4.0, "tol": 1e-6}
})JSON"},
    {"errrep_coulomb", R"JSON({
  "command": "errrep-check",
  "seed": 20240606,
  "grid": {"kind": "radial-1d", "dims": [512], "extents": [40.0], "offset": true},
  "potential": {"kind": "coulomb-one-body", "c": -2.0},
  "errrep": {"t": 0.1, "nodes": [8, 16, 32], "states": 20, "decay": 6.0, "tol": 1e-3}
})JSON"},
};

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : kPresets) names.push_back(name);
  return names;
}

std::string preset_text(const std::string& name) {
  for (const auto& [n, text] : kPresets)
    if (name == n) return text;
  throw ConfigError("$", "unknown preset " + name);
}

Config load_preset(const std::string& name) { return parse_config(preset_text(name)); }

GridSpec build_grid(const GridSpecConfig& cfg) {
  GridKind kind;
  if (cfg.kind == "radial-1d") {
    kind = GridKind::radial_1d;
  } else if (cfg.kind == "cartesian-3d") {
    kind = GridKind::cartesian_3d;
  } else if (cfg.kind == "tensor-3n") {
    kind = GridKind::tensor_3n;
  } else {
    throw ConfigError("$.grid.kind", "unknown grid kind " + cfg.kind);
  }
  try {
    return make_grid(kind, cfg.dims, cfg.extents, cfg.offset, cfg.particles);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("$.grid", e.what());
  }
}

Potential build_potential(const PotentialSpec& cfg, const GridSpec& grid) {
  try {
    if (cfg.kind == "zero") return sample_zero(grid);
    if (cfg.kind == "coulomb-one-body") return sample_coulomb_one_body(cfg.c, grid);
    if (cfg.kind == "coulomb-pairwise") return sample_coulomb_pairwise(cfg.cjk, grid);
    if (cfg.kind == "gaussian-well")
      return sample_gaussian_well(cfg.depth, cfg.width, grid);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("$.potential", e.what());
  }
  throw ConfigError("$.potential.kind", "unknown potential kind " + cfg.kind);
}

Wavefunction build_state(const StateSpec& cfg, const GridSpec& grid, std::uint64_t seed) {
  if (cfg.kind == "random") {
    Rng rng(seed);
    return random_state(grid, cfg.decay, rng);
  }
  Wavefunction psi = make_wavefunction(grid, Rep::position);
  if (cfg.kind == "hydrogen-ground") {
    if (grid.kind == GridKind::radial_1d) {
      for (int i = 0; i < grid.dims[0]; ++i) {
        double r = grid.position(0, i);
        psi.values[i] = 2.0 * r * std::exp(-r);
      }
    } else if (grid.kind == GridKind::cartesian_3d) {
      for_each_position(grid, [&](std::size_t flat, const double* x) {
        double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        psi.values[flat] = std::exp(-r) / std::sqrt(M_PI);
      });
    } else {
      throw ConfigError("$.state.kind", "hydrogen-ground needs a radial or cartesian grid");
    }
  } else if (cfg.kind == "radial-packet") {
    if (grid.kind != GridKind::radial_1d)
      throw ConfigError("$.state.kind", "radial-packet needs a radial grid");
    for (int i = 0; i < grid.dims[0]; ++i) {
      double r = grid.position(0, i);
      double dr = r - cfg.center;
      psi.values[i] = r * std::exp(-dr * dr / (2.0 * cfg.sigma * cfg.sigma));
    }
  } else if (cfg.kind == "gaussian") {
    int na = grid.naxes();
    std::vector<double> boost = cfg.boost;
    boost.resize(na, 0.0);
    for_each_position(grid, [&](std::size_t flat, const double* x) {
      double r2 = 0.0, phase = 0.0;
      for (int a = 0; a < na; ++a) {
        r2 += x[a] * x[a];
        phase += boost[a] * x[a];
      }
      psi.values[flat] = std::exp(-r2 / (2.0 * cfg.sigma * cfg.sigma)) *
                         std::exp(std::complex<double>(0.0, phase));
    });
  } else {
    throw ConfigError("$.state.kind", "unknown state kind " + cfg.kind);
  }
  normalize(psi);
  return psi;
}

void write_manifest(const RunManifest& man, const std::string& path) {
  json j;
  j["tool_version"] = man.tool_version;
  j["command"] = man.command;
  j["config_hash"] = man.config_hash;
  j["seed"] = man.seed;
  j["grid"] = man.grid_desc;
  j["timing_ms"] = man.timing_ms;
  j["threads"] = man.threads;
  json outs = json::array();
  for (const auto& o : man.outputs) {
    json e;
    e["path"] = o.path;
    e["fnv64"] = o.fnv64;
    outs.push_back(e);
  }
  j["outputs"] = outs;
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

std::uint64_t file_fnv64(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("file_fnv64: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return fnv1a64(ss.str());
}

bool verify_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) return false;
  json j;
  try {
    in >> j;
  } catch (...) {
    return false;
  }
  if (!j.contains("outputs")) return false;
  for (const auto& o : j.at("outputs")) {
    try {
      if (file_fnv64(o.at("path").get<std::string>()) != o.at("fnv64").get<std::uint64_t>())
        return false;
    } catch (...) {
      return false;
    }
  }
  return true;
}

int configured_threads() {
  const char* env = std::getenv("TROTTERLAB_THREADS");
  int n = 1;
  if (env) {
    n = std::atoi(env);
    if (n < 1) n = 1;
  }
  openblas_set_num_threads(n);
  return n;
}

}  // namespace trotterlab
