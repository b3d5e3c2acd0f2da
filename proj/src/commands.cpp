#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "trotterlab/convergence.hpp"
#include "trotterlab/cutoff.hpp"
#include "trotterlab/io.hpp"
#include "trotterlab/version.hpp"

namespace trotterlab {

namespace {

namespace fs = std::filesystem;

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

Config load_options(const CliOptions& opt, const std::string& command) {
  Config cfg;
  if (!opt.preset.empty())
    cfg = load_preset(opt.preset);
  else if (!opt.config_path.empty())
    cfg = load_config_file(opt.config_path);
  else
    throw ConfigError("$", "need --config or --preset");
  if (opt.seed) cfg.seed = *opt.seed;
  if (cfg.command.empty()) cfg.command = command;
  return cfg;
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

std::string grid_desc(const GridSpec& g) {
  std::ostringstream ss;
  switch (g.kind) {
    case GridKind::radial_1d: ss << "radial-1d"; break;
    case GridKind::cartesian_3d: ss << "cartesian-3d"; break;
    case GridKind::tensor_3n: ss << "tensor-3n"; break;
  }
  ss << " dims=[";
  for (std::size_t i = 0; i < g.dims.size(); ++i) ss << (i ? "," : "") << g.dims[i];
  ss << "] extents=[";
  for (std::size_t i = 0; i < g.extents.size(); ++i)
    ss << (i ? "," : "") << fmt17(g.extents[i]);
  ss << "]";
  if (g.kind == GridKind::tensor_3n) ss << " particles=" << g.particles;
  return ss.str();
}

void emit_manifest(const Config& cfg, const CliOptions& opt, const std::string& command,
                   const std::string& gdesc, double ms, int threads,
                   const std::vector<std::string>& files) {
  RunManifest man;
  man.tool_version = TROTTERLAB_VERSION;
  man.command = command;
  man.config_hash = fnv1a64(cfg.raw_json);
  man.seed = cfg.seed;
  man.grid_desc = gdesc;
  man.timing_ms = ms;
  man.threads = threads;
  for (const auto& f : files) man.outputs.push_back({f, file_fnv64(f)});
  write_manifest(man, join_path(opt.out_dir, "manifest.json"));
}

void write_rate_csv(const std::string& path, const RateStudyOutcome& out) {
  std::vector<RateRow> rows = out.rows;
  std::sort(rows.begin(), rows.end(),
            [](const RateRow& a, const RateRow& b) { return a.t < b.t; });
  std::ofstream f(path);
  f << "t,error,bound,in_window,kind\n";
  for (const auto& r : rows)
    f << fmt17(r.t) << "," << fmt17(r.error) << "," << fmt17(r.bound) << ","
      << (r.in_window ? 1 : 0) << "," << r.kind << "\n";
  f << "# fit slope=" << fmt17(out.fit.slope) << " intercept=" << fmt17(out.fit.intercept)
    << " r2=" << fmt17(out.fit.r2) << " n_window=" << out.fit.n_window
    << " reliable=" << (out.fit.reliable ? 1 : 0) << " exact=" << (out.fit.exact ? 1 : 0);
  if (!out.fit.note.empty()) f << " note=" << out.fit.note;
  f << "\n";
  f << "# window apply_tmin=" << (out.window.apply_tmin ? 1 : 0)
    << " t_min=" << fmt17(out.window.t_min)
    << " error_cap=" << fmt17(out.window.error_cap) << "\n";
  f << "# vmax=" << fmt17(out.vmax) << " h2_initial=" << fmt17(out.h2_initial) << "\n";
}

void write_rate_svg(const std::string& path, const RateStudyOutcome& out) {
  std::vector<const RateRow*> pts;
  for (const auto& r : out.rows)
    if (r.t > 0.0 && r.error > 0.0) pts.push_back(&r);
  if (pts.size() < 2) return;
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  auto stretch = [&](double x, double y) {
    xlo = std::min(xlo, x); xhi = std::max(xhi, x);
    ylo = std::min(ylo, y); yhi = std::max(yhi, y);
  };
  for (const auto* r : pts) {
    stretch(std::log10(r->t), std::log10(r->error));
    if (r->bound > 0.0) stretch(std::log10(r->t), std::log10(r->bound));
  }
  if (xhi <= xlo) xhi = xlo + 1.0;
  if (yhi <= ylo) yhi = ylo + 1.0;
  const double W = 600, H = 420, m = 50;
  auto X = [&](double lx) { return m + (lx - xlo) / (xhi - xlo) * (W - 2 * m); };
  auto Y = [&](double ly) { return H - m - (ly - ylo) / (yhi - ylo) * (H - 2 * m); };
  std::ofstream f(path);
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  f << "<rect x=\"" << m << "\" y=\"" << m << "\" width=\"" << W - 2 * m << "\" height=\""
    << H - 2 * m << "\" fill=\"none\" stroke=\"black\"/>\n";
  f << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
    << "\" text-anchor=\"middle\" font-size=\"13\">log10 t</text>\n";
  f << "<text x=\"14\" y=\"" << H / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
    << "transform=\"rotate(-90 14 " << H / 2 << ")\">log10 error</text>\n";
  bool have_bound = false;
  std::ostringstream bline;
  for (const auto* r : pts) {
    if (r->bound > 0.0) {
      bline << (have_bound ? " " : "") << X(std::log10(r->t)) << ","
            << Y(std::log10(r->bound));
      have_bound = true;
    }
  }
  if (have_bound)
    f << "<polyline points=\"" << bline.str()
      << "\" fill=\"none\" stroke=\"#c44\" stroke-dasharray=\"5,4\"/>\n";
  for (const auto* r : pts)
    f << "<circle cx=\"" << X(std::log10(r->t)) << "\" cy=\"" << Y(std::log10(r->error))
      << "\" r=\"3.5\" fill=\"" << (r->in_window ? "#246" : "#aaa") << "\"/>\n";
  if (out.fit.reliable) {
    // fit lives in natural-log space: ln(err) = slope * ln(t) + intercept
    auto err_of = [&](double lx) {
      return out.fit.slope * lx + out.fit.intercept / std::log(10.0);
    };
    f << "<line x1=\"" << X(xlo) << "\" y1=\"" << Y(err_of(xlo)) << "\" x2=\"" << X(xhi)
      << "\" y2=\"" << Y(err_of(xhi)) << "\" stroke=\"#284\"/>\n";
  }
  f << "</svg>\n";
}

void write_audit_csv(const std::string& path, const std::vector<AuditRow>& rows,
                     int warnings, int failures) {
  std::ofstream f(path);
  f << "audit,sample,ratio,bound,margin,pass\n";
  for (const auto& r : rows)
    f << r.audit << "," << r.sample << "," << fmt17(r.ratio) << "," << fmt17(r.bound)
      << "," << fmt17(r.margin) << "," << (r.pass ? 1 : 0) << "\n";
  f << "# warnings=" << warnings << " failures=" << failures << "\n";
}

AuditRow judged_row(const std::string& name, int sample, double ratio, double bound,
                    double margin) {
  AuditRow row;
  row.audit = name;
  row.sample = sample;
  row.ratio = ratio;
  row.bound = bound;
  row.margin = margin;
  double hard = bound * std::max(margin, 1.05);
  row.pass = ratio <= hard;
  row.warn = row.pass && ratio > bound * margin;
  return row;
}

int report_error(const std::exception& e) {
  std::fprintf(stderr, "error: %s\n", e.what());
  return exit_error;
}

}  // namespace

int cmd_rate_study(const CliOptions& opt) {
  try {
    int threads = configured_threads();
    Config cfg = load_options(opt, "rate-study");
    auto t0 = clock_type::now();
    GridSpec grid = build_grid(cfg.grid);
    Potential pot = build_potential(cfg.potential, grid);
    Wavefunction psi0 = build_state(cfg.state, grid, cfg.seed);
    DiscreteHamiltonian H = make_hamiltonian(pot);
    StudySetup setup;
    setup.H = &H;
    setup.psi0 = psi0;
    setup.T = cfg.study.T;
    setup.k_min = cfg.study.k_min;
    setup.k_max = cfg.study.k_max;
    setup.local = cfg.study.kind == "local";
    setup.bound = bound_model_for(pot, grid, h2_norm(psi0));
    RateStudyOutcome out = rate_study(setup);
    fs::create_directories(opt.out_dir);
    std::vector<std::string> files;
    std::string csv = join_path(opt.out_dir, "rate_study.csv");
    write_rate_csv(csv, out);
    files.push_back(csv);
    if (opt.svg) {
      std::string svg = join_path(opt.out_dir, "rate_study.svg");
      write_rate_svg(svg, out);
      if (fs::exists(svg)) files.push_back(svg);
    }
    emit_manifest(cfg, opt, "rate-study", grid_desc(grid), ms_since(t0), threads, files);
    std::printf("rate-study kind=%s slope=%.6f r2=%.6f n_window=%d reliable=%d exact=%d%s%s\n",
                cfg.study.kind.c_str(), out.fit.slope, out.fit.r2, out.fit.n_window,
                out.fit.reliable ? 1 : 0, out.fit.exact ? 1 : 0,
                out.fit.note.empty() ? "" : " note=", out.fit.note.c_str());
    if (out.fit.exact) return exit_pass;
    return out.fit.reliable ? exit_pass : exit_unreliable;
  } catch (const std::exception& e) {
    return report_error(e);
  }
}

int cmd_audit(const CliOptions& opt) {
  try {
    int threads = configured_threads();
    Config cfg = load_options(opt, "audit");
    if (cfg.audit.suite.empty()) throw ConfigError("$.audit.suite", "suite is empty");
    auto t0 = clock_type::now();
    GridSpec grid = build_grid(cfg.grid);
    std::optional<GridSpec> pair_grid;
    if (cfg.audit.pair_grid) pair_grid = build_grid(*cfg.audit.pair_grid);
    const GridSpec& tensor_grid = pair_grid ? *pair_grid : grid;

    std::vector<AuditRow> rows;
    AuditConfig base;
    base.seed = cfg.seed;
    base.samples = cfg.audit.samples;
    base.spectral_decay = cfg.audit.decay;
    base.margin = cfg.audit.margin;

    for (const auto& name : cfg.audit.suite) {
      if (name == "hardy") {
        AuditConfig ac = base;
        ac.grid = grid;
        auto r = hardy_audit(ac);
        rows.insert(rows.end(), r.begin(), r.end());
      } else if (name == "sobolev") {
        AuditConfig ac = base;
        ac.grid = grid;
        auto r = sobolev_audit(ac);
        rows.insert(rows.end(), r.begin(), r.end());
      } else if (name == "y-weight") {
        rows.push_back(judged_row("y_weight", 0, y_weight_l2_norm(),
                                  std::sqrt(2.0) * M_PI, cfg.audit.margin));
      } else if (name == "mixed-derivative") {
        AuditConfig ac = base;
        ac.grid = tensor_grid;
        ac.samples = cfg.audit.pair_samples;
        auto r = mixed_derivative_audit(ac);
        rows.insert(rows.end(), r.begin(), r.end());
      } else if (name == "momentum-counting") {
        AuditConfig ac = base;
        ac.grid = tensor_grid;
        ac.samples = cfg.audit.pair_samples;
        auto r = momentum_counting_audit(ac);
        rows.insert(rows.end(), r.begin(), r.end());
      } else if (name == "nbody-potential") {
        AuditConfig ac = base;
        ac.grid = tensor_grid;
        auto r = nbody_audit(ac, cfg.audit.cjk);
        rows.insert(rows.end(), r.begin(), r.end());
      } else if (name == "nbody-single-pair") {
        std::vector<double> single(cfg.audit.cjk.size(), 0.0);
        if (single.empty()) single.push_back(1.0);
        single[0] = cfg.audit.cjk.empty() ? 1.0 : cfg.audit.cjk[0];
        Potential V = sample_coulomb_pairwise(single, tensor_grid);
        double bound = std::sqrt(2.0) * std::abs(single[0]);
        Rng rng(cfg.seed + 5);
        for (int i = 0; i < cfg.audit.pair_samples; ++i) {
          Wavefunction f = random_state(tensor_grid, cfg.audit.decay, rng);
          rows.push_back(judged_row("single_pair", i, nbody_potential_ratio(f, V), bound,
                                    cfg.audit.margin));
        }
      } else if (name == "power-iteration") {
        Potential V = sample_coulomb_pairwise(cfg.audit.cjk, tensor_grid);
        double opnorm = power_iteration_opnorm(V, cfg.audit.power_iters, cfg.seed + 6);
        double bound = 2.0 * V.c0 * std::pow(tensor_grid.particles, 1.5);
        rows.push_back(judged_row("power_iteration", 0, opnorm, bound, cfg.audit.margin));
      } else if (name == "cutoff-pointwise") {
        CutoffProfile profile = build_cutoff(cfg.audit.cutoff_resolution);
        VregAuditReport rep = vreg_pointwise_bounds(profile, cfg.audit.s);
        AuditRow g = judged_row("vreg_gradient", 0, rep.worst_grad_ratio, 1.0, 1.0);
        g.pass = rep.pass;
        g.warn = false;
        AuditRow l = judged_row("vreg_laplacian", 0, rep.worst_lap_ratio, 1.0, 1.0);
        l.pass = rep.pass;
        l.warn = false;
        rows.push_back(g);
        rows.push_back(l);
      } else {
        throw ConfigError("$.audit.suite", "unknown audit " + name);
      }
    }

    int warnings = 0, failures = 0;
    for (const auto& r : rows) {
      if (!r.pass) ++failures;
      else if (r.warn) ++warnings;
    }
    fs::create_directories(opt.out_dir);
    std::string csv = join_path(opt.out_dir, "audit.csv");
    write_audit_csv(csv, rows, warnings, failures);
    emit_manifest(cfg, opt, "audit", grid_desc(grid), ms_since(t0), threads, {csv});
    std::printf("audit rows=%zu failures=%d warnings=%d\n", rows.size(), failures, warnings);
    if (failures > 0) return exit_error;
    if (warnings > 0) return exit_warnings;
    return exit_pass;
  } catch (const std::exception& e) {
    return report_error(e);
  }
}

int cmd_bounds(const CliOptions& opt) {
  try {
    int threads = configured_threads();
    if (opt.N < 2) {
      std::fprintf(stderr, "error: bounds needs N >= 2 particles\n");
      return exit_error;
    }
    auto t0 = clock_type::now();
    CutoffProfile profile = build_cutoff(20001);
    CutoffConstants cc = cutoff_constants(profile);
    std::vector<ConstantRow> all =
        constant_report(opt.N, opt.c0, cc.cf1, cc.cf2, profile.c0());
    auto is_certified = [](const std::string& n) {
      return n == "C_HLS3" || n == "C_F1_cap" || n == "C_F2_cap" || n == "C_N" ||
             n == "tilde_CF_certified" || n == "tilde_CN_certified";
    };
    auto is_empirical = [](const std::string& n) {
      return n == "C_HLS3" || n == "C0" || n == "C_F1" || n == "C_F2" || n == "C_N" ||
             n == "tilde_CF_empirical" || n == "tilde_CN_empirical";
    };
    fs::create_directories(opt.out_dir);
    auto write_consts = [&](const std::string& path, auto keep) {
      std::ofstream f(path);
      f << "name,value,note\n";
      for (const auto& r : all)
        if (keep(r.name)) f << r.name << "," << fmt17(r.value) << "," << r.note << "\n";
    };
    std::string cert = join_path(opt.out_dir, "constants_certified.csv");
    std::string emp = join_path(opt.out_dir, "constants_empirical.csv");
    write_consts(cert, is_certified);
    write_consts(emp, is_empirical);

    std::string sweep = join_path(opt.out_dir, "tilde_cn_sweep.csv");
    {
      std::ofstream f(sweep);
      f << "N,certified,empirical\n";
      for (int n : integer_ns())
        f << n << "," << fmt17(tilde_cn_certified(n, opt.c0)) << ","
          << fmt17(tilde_cn(n, opt.c0, cc.cf1, cc.cf2)) << "\n";
      LinFit dyadic = tilde_cn_slope(dyadic_ns(), opt.c0);
      LinFit all_n = tilde_cn_slope(integer_ns(), opt.c0);
      f << "# dyadic_slope=" << fmt17(dyadic.slope) << " r2=" << fmt17(dyadic.r2) << "\n";
      f << "# integer_slope=" << fmt17(all_n.slope) << " r2=" << fmt17(all_n.r2) << "\n";
    }

    Config pseudo;
    pseudo.command = "bounds";
    pseudo.seed = 0;
    pseudo.raw_json = std::string("{\"N\":") + std::to_string(opt.N) +
                      ",\"c0\":" + fmt17(opt.c0) + ",\"command\":\"bounds\"}";
    emit_manifest(pseudo, opt, "bounds", "", ms_since(t0), threads, {cert, emp, sweep});
    std::printf("bounds N=%d c0=%s tilde_cn_certified=%s tilde_cn_empirical=%s\n", opt.N,
                fmt17(opt.c0).c_str(), fmt17(tilde_cn_certified(opt.N, opt.c0)).c_str(),
                fmt17(tilde_cn(opt.N, opt.c0, cc.cf1, cc.cf2)).c_str());
    return exit_pass;
  } catch (const std::exception& e) {
    return report_error(e);
  }
}

int cmd_errrep_check(const CliOptions& opt) {
  try {
    int threads = configured_threads();
    Config cfg = load_options(opt, "errrep-check");
    if (cfg.errrep.nodes.empty()) throw ConfigError("$.errrep.nodes", "need node counts");
    auto t0 = clock_type::now();
    GridSpec grid = build_grid(cfg.grid);
    Potential pot = build_potential(cfg.potential, grid);
    DiscreteHamiltonian H = make_hamiltonian(pot);
    std::vector<int> nodes = cfg.errrep.nodes;
    std::sort(nodes.begin(), nodes.end());

    Rng rng(cfg.seed);
    std::vector<double> worst(nodes.size(), 0.0);
    fs::create_directories(opt.out_dir);
    std::string csv = join_path(opt.out_dir, "errrep.csv");
    std::ofstream f(csv);
    f << "state,nodes,residual,defect_norm\n";
    for (int s = 0; s < cfg.errrep.states; ++s) {
      Wavefunction psi = random_state(grid, cfg.errrep.decay, rng);
      Wavefunction defect = splitting_defect(H, cfg.errrep.t, psi);
      defect = transform(defect, Rep::position);
      double dn = norm(defect);
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        Wavefunction quad =
            error_representation_quadrature(H, cfg.errrep.t, psi, nodes[k]);
        quad = transform(quad, Rep::position);
        double resid = diff_norm(defect, quad);
        worst[k] = std::max(worst[k], resid);
        f << s << "," << nodes[k] << "," << fmt17(resid) << "," << fmt17(dn) << "\n";
      }
    }
    bool decreasing = true;
    for (std::size_t k = 1; k < nodes.size(); ++k)
      if (worst[k] > worst[k - 1] && worst[k] > cfg.errrep.tol) decreasing = false;
    bool final_ok = worst.back() <= cfg.errrep.tol;
    f << "# worst";
    for (std::size_t k = 0; k < nodes.size(); ++k)
      f << " n" << nodes[k] << "=" << fmt17(worst[k]);
    f << "\n# decreasing=" << (decreasing ? 1 : 0) << " final_ok=" << (final_ok ? 1 : 0)
      << " tol=" << fmt17(cfg.errrep.tol) << "\n";
    f.close();
    emit_manifest(cfg, opt, "errrep-check", grid_desc(grid), ms_since(t0), threads, {csv});
    std::printf("errrep-check states=%d final=%s tol=%s decreasing=%d final_ok=%d\n",
                cfg.errrep.states, fmt17(worst.back()).c_str(),
                fmt17(cfg.errrep.tol).c_str(), decreasing ? 1 : 0, final_ok ? 1 : 0);
    return (decreasing && final_ok) ? exit_pass : exit_error;
  } catch (const std::exception& e) {
    return report_error(e);
  }
}

int cmd_h2_trace(const CliOptions& opt) {
  try {
    int threads = configured_threads();
    Config cfg = load_options(opt, "h2-trace");
    auto t0 = clock_type::now();
    GridSpec grid = build_grid(cfg.grid);
    Potential pot = build_potential(cfg.potential, grid);
    const StateSpec& st = cfg.h2trace.state ? *cfg.h2trace.state : cfg.state;
    Wavefunction psi0 = build_state(st, grid, cfg.seed);
    DiscreteHamiltonian H = make_hamiltonian(pot);
    H2TraceOutcome out = h2_trace(H, psi0, cfg.h2trace.T, cfg.h2trace.samples);
    fs::create_directories(opt.out_dir);
    std::string csv = join_path(opt.out_dir, "h2_trace.csv");
    {
      std::ofstream f(csv);
      f << "time,ratio\n";
      for (const auto& r : out.rows) f << fmt17(r.time) << "," << fmt17(r.ratio) << "\n";
      f << "# max_ratio=" << fmt17(out.max_ratio)
        << " growth_bound=" << fmt17(out.growth_bound) << " pass=" << (out.pass ? 1 : 0)
        << "\n";
    }
    emit_manifest(cfg, opt, "h2-trace", grid_desc(grid), ms_since(t0), threads, {csv});
    std::printf("h2-trace T=%s samples=%d max_ratio=%s growth_bound=%s pass=%d\n",
                fmt17(cfg.h2trace.T).c_str(), cfg.h2trace.samples,
                fmt17(out.max_ratio).c_str(), fmt17(out.growth_bound).c_str(),
                out.pass ? 1 : 0);
    return out.pass ? exit_pass : exit_error;
  } catch (const std::exception& e) {
    return report_error(e);
  }
}

}  // namespace trotterlab
