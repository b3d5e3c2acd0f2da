#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trotterlab/convergence.hpp"
#include "trotterlab/cutoff.hpp"
#include "trotterlab/io.hpp"
#include "trotterlab/version.hpp"

namespace py = pybind11;
namespace tl = trotterlab;

namespace {

tl::GridSpec grid_from_args(const std::string& kind, std::vector<int> dims,
                            std::vector<double> extents, bool offset, int particles) {
  tl::GridSpecConfig cfg;
  cfg.kind = kind;
  cfg.dims = std::move(dims);
  cfg.extents = std::move(extents);
  cfg.offset = offset;
  cfg.particles = particles;
  return tl::build_grid(cfg);
}

tl::Wavefunction wf_from_array(const tl::GridSpec& grid, py::array_t<std::complex<double>> arr,
                               const std::string& rep) {
  if (static_cast<std::size_t>(arr.size()) != grid.total())
    throw std::invalid_argument("array length does not match the grid");
  tl::Wavefunction psi =
      tl::make_wavefunction(grid, rep == "momentum" ? tl::Rep::momentum : tl::Rep::position);
  auto buf = arr.request();
  const auto* src = static_cast<const std::complex<double>*>(buf.ptr);
  std::copy(src, src + grid.total(), psi.values.begin());
  return psi;
}

py::array_t<std::complex<double>> array_from_wf(const tl::Wavefunction& psi) {
  py::array_t<std::complex<double>> out(psi.values.size());
  auto buf = out.request();
  std::copy(psi.values.begin(), psi.values.end(),
            static_cast<std::complex<double>*>(buf.ptr));
  return out;
}

py::dict fit_dict(const tl::RateStudyOutcome& out) {
  py::dict d;
  d["slope"] = out.fit.slope;
  d["intercept"] = out.fit.intercept;
  d["r2"] = out.fit.r2;
  d["n_window"] = out.fit.n_window;
  d["reliable"] = out.fit.reliable;
  d["exact"] = out.fit.exact;
  d["note"] = out.fit.note;
  d["vmax"] = out.vmax;
  d["h2_initial"] = out.h2_initial;
  py::list rows;
  for (const auto& r : out.rows) {
    py::dict e;
    e["t"] = r.t;
    e["error"] = r.error;
    e["bound"] = r.bound;
    e["in_window"] = r.in_window;
    e["kind"] = r.kind;
    rows.append(e);
  }
  d["rows"] = rows;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = TROTTERLAB_VERSION;

  // explicit constants
  m.def("chls3", &tl::chls3);
  m.def("c_n", &tl::c_n, py::arg("N"), py::arg("c0"));
  m.def("cf1_closed_form_cap", &tl::cf1_closed_form_cap);
  m.def("cf2_closed_form_cap", &tl::cf2_closed_form_cap);
  m.def("tilde_cf", &tl::tilde_cf, py::arg("cf1"), py::arg("cf2"));
  m.def("tilde_cf_certified", &tl::tilde_cf_certified);
  m.def("tilde_cn", &tl::tilde_cn, py::arg("N"), py::arg("c0"), py::arg("cf1"),
        py::arg("cf2"));
  m.def("tilde_cn_certified", &tl::tilde_cn_certified, py::arg("N"), py::arg("c0"));
  m.def("chls_upper_bound", &tl::chls_upper_bound, py::arg("n"));
  m.def("h2_growth_one_body", &tl::h2_growth_one_body, py::arg("abs_c"));
  m.def("h2_growth_nbody", &tl::h2_growth_nbody, py::arg("N"), py::arg("c0"));
  m.def("second_moment_bound", &tl::second_moment_bound, py::arg("h_psi_norm"),
        py::arg("psi_norm"), py::arg("N"), py::arg("c0"));
  m.def(
      "theorem_bound",
      [](double T, double t, double h2norm, int N, double c0) {
        tl::BoundValue b = tl::theorem_bound(T, t, h2norm, N, c0);
        return py::make_tuple(b.value, b.t_warning);
      },
      py::arg("T"), py::arg("t"), py::arg("h2norm"), py::arg("N"), py::arg("c0"));
  m.def(
      "one_body_theorem_bound",
      [](double T, double t, double h2norm, double abs_c) {
        tl::BoundValue b = tl::one_body_theorem_bound(T, t, h2norm, abs_c);
        return py::make_tuple(b.value, b.t_warning);
      },
      py::arg("T"), py::arg("t"), py::arg("h2norm"), py::arg("abs_c"));

  // transition profile
  m.def(
      "cutoff_profile",
      [](int resolution) {
        tl::CutoffProfile p = tl::build_cutoff(resolution);
        tl::CutoffConstants c = tl::cutoff_constants(p);
        py::dict d;
        d["c0"] = p.c0();
        d["cf1"] = c.cf1;
        d["cf2"] = c.cf2;
        d["arg1"] = c.arg1;
        d["arg2"] = c.arg2;
        d["cf1_within_cap"] = c.cf1_within_cap;
        d["cf2_within_cap"] = c.cf2_within_cap;
        d["cf2_within_c0"] = c.cf2_within_c0;
        return d;
      },
      py::arg("resolution") = 20001);
  m.def(
      "f_le",
      [](py::array_t<double> lam, int resolution) {
        tl::CutoffProfile p = tl::build_cutoff(resolution);
        py::array_t<double> out(lam.size());
        auto in = lam.unchecked<1>();
        auto o = out.mutable_unchecked<1>();
        for (py::ssize_t i = 0; i < in.shape(0); ++i) o(i) = p.f_le(in(i));
        return out;
      },
      py::arg("lam"), py::arg("resolution") = 20001);
  m.def(
      "vsin_l2_norm",
      [](double s, double beta, int resolution) {
        tl::CutoffProfile p = tl::build_cutoff(resolution);
        return tl::vsin_l2_norm(p, s, beta);
      },
      py::arg("s"), py::arg("beta"), py::arg("resolution") = 20001);

  // grid handle with the main state operations
  py::class_<tl::GridSpec>(m, "Grid")
      .def(py::init(&grid_from_args), py::arg("kind"), py::arg("dims"), py::arg("extents"),
           py::arg("offset") = true, py::arg("particles") = 1)
      .def_property_readonly("total", [](const tl::GridSpec& g) { return g.total(); })
      .def_property_readonly("naxes", [](const tl::GridSpec& g) { return g.naxes(); })
      .def("spacing", [](const tl::GridSpec& g, int axis) { return g.spacing(axis); })
      .def(
          "transform",
          [](const tl::GridSpec& g, py::array_t<std::complex<double>> arr,
             const std::string& from, const std::string& to) {
            tl::Wavefunction psi = wf_from_array(g, arr, from);
            return array_from_wf(tl::transform(
                psi, to == "momentum" ? tl::Rep::momentum : tl::Rep::position));
          },
          py::arg("values"), py::arg("from_rep") = "position",
          py::arg("to_rep") = "momentum")
      .def(
          "norm",
          [](const tl::GridSpec& g, py::array_t<std::complex<double>> arr,
             const std::string& rep) { return tl::norm(wf_from_array(g, arr, rep)); },
          py::arg("values"), py::arg("rep") = "position")
      .def(
          "h2_norm",
          [](const tl::GridSpec& g, py::array_t<std::complex<double>> arr,
             const std::string& rep) { return tl::h2_norm(wf_from_array(g, arr, rep)); },
          py::arg("values"), py::arg("rep") = "position");

  // JSON-config entry points mirroring the CLI
  m.def("run_rate_study", [](const std::string& json_text) {
    tl::Config cfg = tl::parse_config(json_text);
    tl::GridSpec grid = tl::build_grid(cfg.grid);
    tl::Potential pot = tl::build_potential(cfg.potential, grid);
    tl::Wavefunction psi0 = tl::build_state(cfg.state, grid, cfg.seed);
    tl::DiscreteHamiltonian H = tl::make_hamiltonian(pot);
    tl::StudySetup setup;
    setup.H = &H;
    setup.psi0 = psi0;
    setup.T = cfg.study.T;
    setup.k_min = cfg.study.k_min;
    setup.k_max = cfg.study.k_max;
    setup.local = cfg.study.kind == "local";
    setup.bound = tl::bound_model_for(pot, grid, tl::h2_norm(psi0));
    return fit_dict(tl::rate_study(setup));
  });
  m.def("run_audit", [](const std::string& json_text) {
    tl::Config cfg = tl::parse_config(json_text);
    tl::GridSpec grid = tl::build_grid(cfg.grid);
    tl::AuditConfig ac;
    ac.seed = cfg.seed;
    ac.samples = cfg.audit.samples;
    ac.grid = grid;
    ac.spectral_decay = cfg.audit.decay;
    ac.margin = cfg.audit.margin;
    std::vector<tl::AuditRow> rows;
    for (const auto& name : cfg.audit.suite) {
      std::vector<tl::AuditRow> r;
      if (name == "hardy") r = tl::hardy_audit(ac);
      else if (name == "sobolev") r = tl::sobolev_audit(ac);
      else if (name == "mixed-derivative") r = tl::mixed_derivative_audit(ac);
      else if (name == "momentum-counting") r = tl::momentum_counting_audit(ac);
      else if (name == "nbody-potential") r = tl::nbody_audit(ac, cfg.audit.cjk);
      else throw std::invalid_argument("unknown audit " + name);
      rows.insert(rows.end(), r.begin(), r.end());
    }
    int failures = 0, warnings = 0;
    double worst = 0.0;
    for (const auto& r : rows) {
      if (!r.pass) ++failures;
      else if (r.warn) ++warnings;
      if (r.bound > 0.0) worst = std::max(worst, r.ratio / r.bound);
    }
    py::dict d;
    d["rows"] = rows.size();
    d["failures"] = failures;
    d["warnings"] = warnings;
    d["worst_ratio"] = worst;
    return d;
  });
  m.def("run_errrep_check", [](const std::string& json_text) {
    tl::Config cfg = tl::parse_config(json_text);
    tl::GridSpec grid = tl::build_grid(cfg.grid);
    tl::Potential pot = tl::build_potential(cfg.potential, grid);
    tl::DiscreteHamiltonian H = tl::make_hamiltonian(pot);
    tl::Rng rng(cfg.seed);
    std::vector<int> nodes = cfg.errrep.nodes;
    std::sort(nodes.begin(), nodes.end());
    std::vector<double> worst(nodes.size(), 0.0);
    for (int s = 0; s < cfg.errrep.states; ++s) {
      tl::Wavefunction psi = tl::random_state(grid, cfg.errrep.decay, rng);
      tl::Wavefunction defect =
          tl::transform(tl::splitting_defect(H, cfg.errrep.t, psi), tl::Rep::position);
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        tl::Wavefunction quad = tl::transform(
            tl::error_representation_quadrature(H, cfg.errrep.t, psi, nodes[k]),
            tl::Rep::position);
        worst[k] = std::max(worst[k], tl::diff_norm(defect, quad));
      }
    }
    py::dict d;
    d["nodes"] = nodes;
    d["worst"] = worst;
    d["final"] = worst.back();
    d["tol"] = cfg.errrep.tol;
    d["pass"] = worst.back() <= cfg.errrep.tol;
    return d;
  });
  m.def("run_h2_trace", [](const std::string& json_text) {
    tl::Config cfg = tl::parse_config(json_text);
    tl::GridSpec grid = tl::build_grid(cfg.grid);
    tl::Potential pot = tl::build_potential(cfg.potential, grid);
    const tl::StateSpec& st = cfg.h2trace.state ? *cfg.h2trace.state : cfg.state;
    tl::Wavefunction psi0 = tl::build_state(st, grid, cfg.seed);
    tl::DiscreteHamiltonian H = tl::make_hamiltonian(pot);
    tl::H2TraceOutcome out = tl::h2_trace(H, psi0, cfg.h2trace.T, cfg.h2trace.samples);
    py::dict d;
    d["max_ratio"] = out.max_ratio;
    d["growth_bound"] = out.growth_bound;
    d["pass"] = out.pass;
    py::list times, ratios;
    for (const auto& r : out.rows) {
      times.append(r.time);
      ratios.append(r.ratio);
    }
    d["times"] = times;
    d["ratios"] = ratios;
    return d;
  });
  m.def("preset_text", &tl::preset_text, py::arg("name"));
  m.def("preset_names", &tl::preset_names);
}
