#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "viab/commands.hpp"

namespace {

// check:    floor/threshold conditions and maximal catches   (exit 0/1)
// kernel:   grid iteration + closed-form boundary, agreement (exit 0/2)
// simulate: feedback-policy trajectory                        (exit 0/1)
// fit:      parameter estimation from an observation CSV      (exit 0/2)
// Any malformed config/arguments exit 64.
int run(int argc, char** argv) {
  CLI::App app{
      "viability kernels for harvested predator-prey ecosystems"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  bool svg = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "run configuration file")
        ->required();
    sub->add_option("--out", out_dir, "output directory (overrides config)");
    sub->add_flag("--svg", svg, "also write SVG plots");
  };

  CLI::App* check = app.add_subcommand(
      "check", "evaluate the viability conditions for a configuration");
  CLI::App* kernel = app.add_subcommand(
      "kernel", "compute the kernel on a grid and compare with closed form");
  CLI::App* simulate = app.add_subcommand(
      "simulate", "run a feedback harvesting policy forward in time");
  CLI::App* fit = app.add_subcommand(
      "fit", "estimate model parameters from observed biomasses and catches");
  for (CLI::App* sub : {check, kernel, simulate, fit}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exits 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return viab::kExitUsage;
  }

  try {
    viab::RunConfig cfg = viab::parse_config_file(config_path);
    if (!out_dir.empty()) cfg.output.dir = out_dir;
    if (svg) cfg.output.svg = true;

    viab::RunReport report;
    if (check->parsed())
      report = viab::cmd_check(cfg, std::cout);
    else if (kernel->parsed())
      report = viab::cmd_kernel(cfg, std::cout);
    else if (simulate->parsed())
      report = viab::cmd_simulate(cfg, std::cout);
    else
      report = viab::cmd_fit(cfg, std::cout);
    return report.exit_code;
  } catch (const viab::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return viab::kExitUsage;
  } catch (const viab::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return viab::kExitUsage;
  } catch (const viab::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return viab::kExitConditionFailure;
  } catch (const viab::Error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 70;  // EX_SOFTWARE: a bug, not an answer
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
