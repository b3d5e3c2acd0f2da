#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "trotterlab/io.hpp"

using namespace trotterlab;
namespace fs = std::filesystem;

namespace {

std::string error_path(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.path;
  }
  return "";
}

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() / "trotterlab_io_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

}  // namespace

TEST_CASE("parse errors carry json paths") {
  CHECK(error_path("{ not json") == "$");
  CHECK(error_path(R"({"grid":{"kind":"radial-1d","extents":[10.0]}})") == "$.grid.dims");
  CHECK(error_path(R"({"grid":{"kind":"radial-1d","dims":[16],"extents":[]}})") ==
        "$.grid.extents");
  CHECK(error_path(R"({"grid":{"kind":"radial-1d","dims":[16],"extents":[10.0],"offset":3}})") ==
        "$.grid.offset");
  CHECK(error_path(R"({"potential":{"c":1.0}})") == "$.potential.kind");
  CHECK(error_path(R"({"potential":{"kind":"zero","cjk":5}})") == "$.potential.cjk");
  CHECK(error_path(R"({"seed":1.5})") == "$.seed");
  CHECK(error_path(R"({"study":{"kind":"sideways"}})") == "$.study.kind");
  CHECK(error_path(R"({"study":{"k_min":5,"k_max":3}})") == "$.study.k_max");
  CHECK(error_path(R"({"state":{}})") == "$.state.kind");
  CHECK(error_path(R"({"state":{"kind":"gaussian","boost":3}})") == "$.state.boost");
  CHECK(error_path(R"({"audit":{"suite":"hardy"}})") == "$.audit.suite");

  try {
    parse_config("{ not json");
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).rfind("config error at $", 0) == 0);
  }
}

TEST_CASE("canonical dump is layout independent") {
  Config a = parse_config(R"({"seed":7,"command":"audit"})");
  Config b = parse_config("{ \"command\" : \"audit\",\n  \"seed\" : 7 }");
  CHECK(a.raw_json == b.raw_json);
  CHECK(fnv1a64(a.raw_json) == fnv1a64(b.raw_json));
}

TEST_CASE("bundled presets load and carry their pinned parameters") {
  auto names = preset_names();
  REQUIRE(names.size() == 6);
  for (const auto& n : names) CHECK_NOTHROW(load_preset(n));

  Config hyd = load_preset("hydrogen_s_wave");
  CHECK(hyd.command == "rate-study");
  CHECK(hyd.seed == 20240601);
  CHECK(hyd.grid.kind == "radial-1d");
  CHECK(hyd.grid.dims == std::vector<int>{4096});
  CHECK(hyd.grid.extents == std::vector<double>{60.0});
  CHECK(hyd.potential.kind == "coulomb-one-body");
  CHECK(hyd.potential.c == -2.0);
  CHECK(hyd.state.kind == "hydrogen-ground");
  CHECK(hyd.study.k_min == 3);
  CHECK(hyd.study.k_max == 12);
  CHECK(hyd.h2trace.T == 2.0);
  CHECK(hyd.h2trace.samples == 21);

  Config ctl = load_preset("gaussian_control");
  CHECK(ctl.grid.kind == "cartesian-3d");
  CHECK(ctl.potential.kind == "gaussian-well");
  CHECK(ctl.state.boost.size() == 3);

  Config aud = load_preset("audit_default");
  CHECK(aud.audit.suite.size() == 6);
  REQUIRE(aud.audit.pair_grid.has_value());
  CHECK(aud.audit.pair_grid->kind == "tensor-3n");
  CHECK(aud.audit.pair_grid->particles == 2);
  CHECK(aud.audit.samples == 500);
  CHECK(aud.audit.pair_samples == 200);
  CHECK(aud.audit.cutoff_resolution == 20001);
  CHECK(aud.audit.s == 0.25);

  Config nb = load_preset("nbody_n2_audit");
  CHECK(nb.grid.kind == "tensor-3n");
  CHECK(nb.audit.suite.size() == 3);
  CHECK(nb.audit.cjk == std::vector<double>{1.0});

  Config sm = load_preset("errrep_smooth");
  CHECK(sm.errrep.nodes == std::vector<int>{8, 16, 32});
  CHECK(sm.errrep.tol == 1e-6);
  Config cl = load_preset("errrep_coulomb");
  CHECK(cl.errrep.tol == 1e-3);
  CHECK(cl.errrep.decay == 6.0);

  CHECK_THROWS_AS(load_preset("no_such_preset"), ConfigError);
}

TEST_CASE("preset files on disk match the embedded texts") {
  fs::path repo_presets = fs::path(__FILE__).parent_path().parent_path() / "presets";
  REQUIRE(fs::exists(repo_presets));
  for (const auto& n : preset_names()) {
    fs::path f = repo_presets / (n + ".json");
    REQUIRE(fs::exists(f));
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(parse_config(ss.str()).raw_json == load_preset(n).raw_json);
  }
}

TEST_CASE("grid and potential builders wrap validation failures") {
  GridSpecConfig g;
  g.kind = "radial-1d";
  g.dims = {256};
  g.extents = {20.0};
  GridSpec grid = build_grid(g);
  CHECK(grid.kind == GridKind::radial_1d);
  CHECK(grid.dims[0] == 256);

  g.kind = "moebius";
  CHECK_THROWS_AS(build_grid(g), ConfigError);
  g.kind = "radial-1d";
  g.dims = {12};
  try {
    build_grid(g);
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(e.path == "$.grid");
  }

  g.dims = {256};
  grid = build_grid(g);
  PotentialSpec p;
  p.kind = "coulomb-one-body";
  p.c = -2.0;
  Potential V = build_potential(p, grid);
  CHECK(V.kind == PotentialKind::coulomb_one_body);
  p.kind = "antigravity";
  CHECK_THROWS_AS(build_potential(p, grid), ConfigError);
  p.kind = "coulomb-pairwise";
  p.cjk = {1.0};
  try {
    build_potential(p, grid);  // pairwise needs a tensor grid
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(e.path == "$.potential");
  }
}

TEST_CASE("state builder produces unit-norm states of each kind") {
  GridSpecConfig gc;
  gc.kind = "radial-1d";
  gc.dims = {256};
  gc.extents = {30.0};
  GridSpec rad = build_grid(gc);

  StateSpec hs;
  hs.kind = "hydrogen-ground";
  Wavefunction h = build_state(hs, rad, 1);
  CHECK(norm(h) == doctest::Approx(1.0).epsilon(1e-12));
  double r3 = rad.position(0, 3), r9 = rad.position(0, 9);
  CHECK(std::abs(h.values[3]) / std::abs(h.values[9]) ==
        doctest::Approx(r3 * std::exp(-r3) / (r9 * std::exp(-r9))).epsilon(1e-12));

  StateSpec pk;
  pk.kind = "radial-packet";
  pk.center = 10.0;
  pk.sigma = 1.0;
  Wavefunction packet = build_state(pk, rad, 1);
  CHECK(norm(packet) == doctest::Approx(1.0).epsilon(1e-12));

  StateSpec rs;
  rs.kind = "random";
  rs.decay = 4.0;
  Wavefunction ra = build_state(rs, rad, 42);
  Wavefunction rb = build_state(rs, rad, 42);
  Wavefunction rc = build_state(rs, rad, 43);
  CHECK(norm(ra) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(diff_norm(ra, rb) == 0.0);
  CHECK(diff_norm(ra, rc) > 1e-3);

  GridSpecConfig cc;
  cc.kind = "cartesian-3d";
  cc.dims = {16, 16, 16};
  cc.extents = {8.0, 8.0, 8.0};
  GridSpec cart = build_grid(cc);
  StateSpec gs;
  gs.kind = "gaussian";
  gs.sigma = 1.5;
  gs.boost = {0.7, 0.3, 0.0};
  Wavefunction gw = build_state(gs, cart, 1);
  CHECK(norm(gw) == doctest::Approx(1.0).epsilon(1e-12));

  StateSpec bad;
  bad.kind = "plane-wave";
  CHECK_THROWS_AS(build_state(bad, rad, 1), ConfigError);
  StateSpec rp;
  rp.kind = "radial-packet";
  CHECK_THROWS_AS(build_state(rp, cart, 1), ConfigError);
}

TEST_CASE("hash function and file hashing") {
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
  fs::path dir = scratch_dir();
  write_file(dir / "blob.txt", "foobar");
  CHECK(file_fnv64((dir / "blob.txt").string()) == 0x85944171f73967e8ull);
  CHECK_THROWS_AS(file_fnv64((dir / "missing.txt").string()), std::runtime_error);
}

TEST_CASE("manifest round trip and tamper detection") {
  fs::path dir = scratch_dir();
  write_file(dir / "a.csv", "t,error\n1,2\n");
  write_file(dir / "b.csv", "x\n");

  RunManifest man;
  man.tool_version = "0.1.0";
  man.command = "rate-study";
  man.config_hash = 123456789;
  man.seed = 7;
  man.grid_desc = "radial-1d 256";
  man.timing_ms = 12.5;
  man.threads = 1;
  man.outputs.push_back({(dir / "a.csv").string(), file_fnv64((dir / "a.csv").string())});
  man.outputs.push_back({(dir / "b.csv").string(), file_fnv64((dir / "b.csv").string())});
  fs::path mpath = dir / "manifest.json";
  write_manifest(man, mpath.string());
  CHECK(verify_manifest(mpath.string()));

  std::ofstream app(dir / "a.csv", std::ios::app);
  app << "tampered\n";
  app.close();
  CHECK_FALSE(verify_manifest(mpath.string()));

  fs::remove(dir / "a.csv");
  CHECK_FALSE(verify_manifest(mpath.string()));

  write_file(dir / "broken.json", "{ nope");
  CHECK_FALSE(verify_manifest((dir / "broken.json").string()));
  CHECK_FALSE(verify_manifest((dir / "absent.json").string()));
}

TEST_CASE("thread count honors the environment") {
  unsetenv("TROTTERLAB_THREADS");
  CHECK(configured_threads() == 1);
  setenv("TROTTERLAB_THREADS", "3", 1);
  CHECK(configured_threads() == 3);
  setenv("TROTTERLAB_THREADS", "0", 1);
  CHECK(configured_threads() == 1);
  setenv("TROTTERLAB_THREADS", "junk", 1);
  CHECK(configured_threads() == 1);
  unsetenv("TROTTERLAB_THREADS");
}
