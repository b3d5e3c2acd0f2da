#include <cstdio>

#include <CLI11.hpp>

#include "trotterlab/io.hpp"
#include "trotterlab/version.hpp"

namespace tl = trotterlab;

namespace {

struct Shared {
  tl::CliOptions opt;
  std::uint64_t seed_value = 0;
  bool seed_set = false;
};

void add_common(CLI::App* sub, Shared& sh) {
  sub->add_option("--config", sh.opt.config_path, "path to a JSON run config");
  sub->add_option("--preset", sh.opt.preset, "named built-in config");
  sub->add_option("--out-dir", sh.opt.out_dir, "output directory")->capture_default_str();
  sub->add_option("--seed", sh.seed_value, "override the config seed")
      ->each([&sh](const std::string&) { sh.seed_set = true; });
}

tl::CliOptions finish(Shared& sh) {
  if (sh.seed_set) sh.opt.seed = sh.seed_value;
  return sh.opt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"split-operator rate studies and inequality audits"};
  app.set_version_flag("--version", TROTTERLAB_VERSION);
  app.require_subcommand(1);

  Shared rate, audit, errrep, h2;
  tl::CliOptions bounds_opt;

  CLI::App* s_rate = app.add_subcommand("rate-study", "Trotter error ladder and order fit");
  add_common(s_rate, rate);
  s_rate->add_flag("--svg", rate.opt.svg, "also emit a log-log plot");

  CLI::App* s_audit = app.add_subcommand("audit", "numerically exercise the inequality suite");
  add_common(s_audit, audit);

  CLI::App* s_bounds = app.add_subcommand("bounds", "tabulate the explicit constants");
  s_bounds->add_option("--N", bounds_opt.N, "particle count")->capture_default_str();
  s_bounds->add_option("--c0", bounds_opt.c0, "max coupling strength")->capture_default_str();
  s_bounds->add_option("--out-dir", bounds_opt.out_dir, "output directory")
      ->capture_default_str();

  CLI::App* s_errrep = app.add_subcommand("errrep-check",
                                          "validate the error representation identity");
  add_common(s_errrep, errrep);

  CLI::App* s_h2 = app.add_subcommand("h2-trace", "track the Sobolev norm along the flow");
  add_common(s_h2, h2);

  CLI::App* s_presets = app.add_subcommand("presets", "list built-in config names");

  CLI11_PARSE(app, argc, argv);

  if (s_rate->parsed()) return tl::cmd_rate_study(finish(rate));
  if (s_audit->parsed()) return tl::cmd_audit(finish(audit));
  if (s_bounds->parsed()) return tl::cmd_bounds(bounds_opt);
  if (s_errrep->parsed()) return tl::cmd_errrep_check(finish(errrep));
  if (s_h2->parsed()) return tl::cmd_h2_trace(finish(h2));
  if (s_presets->parsed()) {
    for (const auto& name : tl::preset_names()) std::printf("%s\n", name.c_str());
    return tl::exit_pass;
  }
  return tl::exit_error;
}
