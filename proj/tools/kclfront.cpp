// kclfront: run, validate and list front-propagation scenarios.

#include <cstdio>
#include <iostream>
#include <optional>
#include <regex>
#include <string>

#include "CLI11.hpp"
#include "kcl/error.hpp"
#include "kcl/runner.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::string> output_dir;
  std::optional<double> t_end;
  std::optional<std::string> grid;
  std::optional<std::string> model;
  bool no_ct = false;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("config", o.config, "run configuration file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--output-dir", o.output_dir, "output directory");
  cmd->add_option("--t-end", o.t_end, "final time");
  cmd->add_option("--grid", o.grid, "lattice size as N1xN2");
  cmd->add_option("--model", o.model, "closure model")->check(CLI::IsMember({"srt", "wnlrt"}));
  cmd->add_flag("--no-ct", o.no_ct, "disable constrained transport (negative control)");
}

kcl::RunConfig resolve(const Overrides& o) {
  kcl::RunConfig cfg = kcl::load_run_config(o.config);
  if (o.output_dir) cfg.output_dir = *o.output_dir;
  if (o.t_end) cfg.t_end = *o.t_end;
  if (o.grid) {
    static const std::regex pattern(R"((\d+)[xX](\d+))");
    std::smatch m;
    if (!std::regex_match(*o.grid, m, pattern)) {
      throw kcl::SolverError(kcl::ErrorKind::BadConfig, "--grid expects N1xN2, got '" + *o.grid + "'");
    }
    cfg.scenario.grid.n1 = std::stoi(m[1].str());
    cfg.scenario.grid.n2 = std::stoi(m[2].str());
  }
  if (o.model) cfg.scenario.model = kcl::model_from_string(*o.model);
  if (o.no_ct) cfg.ct_enabled = false;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shock and nonlinear wavefront propagation with kinematical conservation laws"};
  app.set_version_flag("--version", kcl::version_string());
  app.require_subcommand(1);

  Overrides run_opts;
  Overrides validate_opts;
  auto* run_cmd = app.add_subcommand("run", "run a configuration to t_end");
  add_overrides(run_cmd, run_opts);
  auto* validate_cmd = app.add_subcommand("validate", "check a configuration and print it fully resolved");
  add_overrides(validate_cmd, validate_opts);
  auto* list_cmd = app.add_subcommand("print-scenarios", "print the default configuration of every scenario");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list_cmd) {
      bool first = true;
      for (kcl::ScenarioKind kind : kcl::all_scenarios()) {
        kcl::RunConfig cfg;
        cfg.scenario = kcl::default_scenario(kind);
        cfg.output_dir = std::string("out/") + std::string(kcl::to_string(kind));
        if (!first) std::cout << "\n";
        first = false;
        std::cout << "# ---- " << kcl::to_string(kind) << " ----\n";
        kcl::write_run_config(std::cout, cfg);
      }
      return 0;
    }
    if (*validate_cmd) {
      const kcl::RunConfig cfg = resolve(validate_opts);
      (void)kcl::build(cfg.scenario);
      kcl::write_run_config(std::cout, cfg);
      std::cerr << "config ok\n";
      return 0;
    }
    const kcl::RunConfig cfg = resolve(run_opts);
    const kcl::RunSummary summary = kcl::run(cfg, &std::cerr);
    if (summary.exit_code != 0) std::cerr << "error: " << summary.message << "\n";
    return summary.exit_code;
  } catch (const kcl::SolverError& e) {
    std::cerr << "error: " << kcl::to_string(e.kind()) << ": " << e.what() << "\n";
    return 1;
  }
}
