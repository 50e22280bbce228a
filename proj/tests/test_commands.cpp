#include "viab/commands.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

using namespace viab;
namespace fs = std::filesystem;

#ifndef VIAB_SOURCE_DIR
#define VIAB_SOURCE_DIR "."
#endif

namespace {

// Small grid so command tests stay fast; numbers match the bundled config.
RunConfig peru_config(const std::string& out_dir) {
  std::istringstream in(
      "model.kind  = lotka_volterra\n"
      "model.R     = 2.25\n"
      "model.L     = 0.945\n"
      "model.alpha = 1.220e-6\n"
      "model.beta  = 4.845e-8\n"
      "model.kappa = 67_113e3\n"
      "thresholds.y_min = 7e6\n"
      "thresholds.z_min = 2e5\n"
      "thresholds.catch1_min = 2e6\n"
      "thresholds.catch2_min = 5e3\n"
      "grid.y_lo = 6e6\ngrid.y_hi = 2e7\ngrid.z_lo = 1e5\ngrid.z_hi = 1e6\n"
      "grid.ny = 80\ngrid.nz = 80\ngrid.v_max = 2.5\ngrid.w_max = 2.0\n"
      "simulate.y0 = 7e6\nsimulate.z0 = 2e5\nsimulate.horizon = 20\n"
      "simulate.policy = min_effort\n"
      "fit.data = " VIAB_SOURCE_DIR "/data/anchovy_hake_synthetic.csv\n"
      "fit.tol = 1e-3\n");
  RunConfig cfg = parse_config(in);
  cfg.output.dir = out_dir;
  return cfg;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() /
             ("viab_test_" + tag + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("check command accepts the reference configuration") {
  std::ostringstream out;
  const RunReport report = cmd_check(peru_config("unused"), out);
  CHECK(report.exit_code == kExitOk);
  const std::string text = out.str();
  CHECK(text.find("check.conditions_satisfied = true") != std::string::npos);
  CHECK(text.find("lv.c1_star = 5399248.223146038") != std::string::npos);
  CHECK(text.find("lv.c2_star = 56829.99999999998") != std::string::npos);
  CHECK(text.find("check.exit = 0") != std::string::npos);
}

TEST_CASE("check command rejects a catch floor above the maximum") {
  RunConfig cfg = peru_config("unused");
  cfg.thresholds->catch1_min = 5.4e6;
  std::ostringstream out;
  CHECK(cmd_check(cfg, out).exit_code == kExitConditionFailure);
  CHECK(out.str().find("lv.catch1_within = false") != std::string::npos);
}

TEST_CASE("check command accepts all-zero thresholds on frozen dynamics") {
  std::istringstream in(
      "model.kind = identity\n"
      "thresholds.y_min = 0\nthresholds.z_min = 0\n"
      "thresholds.catch1_min = 0\nthresholds.catch2_min = 0\n");
  std::ostringstream out;
  CHECK(cmd_check(parse_config(in), out).exit_code == kExitOk);
}

TEST_CASE("check command requires a thresholds section") {
  std::istringstream in("model.kind = identity\n");
  std::ostringstream out;
  CHECK_THROWS_AS(cmd_check(parse_config(in), out), UsageError);
}

TEST_CASE("kernel command writes raster, boundary and agreement artifacts") {
  const TempDir dir("kernel");
  std::ostringstream out;
  const RunReport report = cmd_kernel(peru_config(dir.str()), out);
  CHECK(report.exit_code == kExitOk);
  REQUIRE(report.files.size() == 3);
  for (const auto& f : report.files) {
    CHECK(fs::exists(f));
    CHECK(fs::file_size(f) > 0);
  }
  CHECK(out.str().find("kernel.converged = true") != std::string::npos);

  const std::string raster = slurp(report.files[0]);
  CHECK(raster.rfind("y,z,member\n", 0) == 0);
  const std::string agreement = slurp(report.files[2]);
  CHECK(agreement.find("disagreement_fraction = ") != std::string::npos);
}

TEST_CASE("kernel command reports non-convergence with exit 2") {
  RunConfig cfg = peru_config("unused_nc");
  cfg.grid->max_iter = 0;
  const TempDir dir("kernel_nc");
  cfg.output.dir = dir.str();
  std::ostringstream out;
  CHECK(cmd_kernel(cfg, out).exit_code == kExitNoConvergence);
}

TEST_CASE("kernel command needs a grid section") {
  RunConfig cfg = peru_config("unused");
  cfg.grid.reset();
  std::ostringstream out;
  CHECK_THROWS_AS(cmd_kernel(cfg, out), UsageError);
}

TEST_CASE("simulate command stays viable from the floor corner") {
  const TempDir dir("simulate");
  RunConfig cfg = peru_config(dir.str());
  cfg.output.svg = true;
  std::ostringstream out;
  const RunReport report = cmd_simulate(cfg, out);
  CHECK(report.exit_code == kExitOk);
  CHECK(out.str().find("simulate.first_violation = none") !=
        std::string::npos);
  REQUIRE(report.files.size() == 2);  // trajectory + svg

  const std::string traj = slurp(report.files[0]);
  CHECK(traj.rfind("t,y,z,v,w,acceptable\n", 0) == 0);
  // 1 header + horizon-many control rows + the final state row ends in ,,
  CHECK(std::count(traj.begin(), traj.end(), '\n') == 22);
  CHECK(traj.find(",,\n") != std::string::npos);

  const std::string svg = slurp(report.files[1]);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("polygon") != std::string::npos);
}

TEST_CASE("simulate command flags a start outside the kernel") {
  const TempDir dir("simulate_bad");
  RunConfig cfg = peru_config(dir.str());
  cfg.simulate->s0 = {6.5e6, 2e5};
  cfg.simulate->horizon = 3;
  std::ostringstream out;
  CHECK(cmd_simulate(cfg, out).exit_code == kExitConditionFailure);
  CHECK(out.str().find("simulate.first_violation = 0") != std::string::npos);
}

TEST_CASE("fit command recovers parameters and writes the trace") {
  const TempDir dir("fit");
  std::ostringstream out;
  const RunReport report = cmd_fit(peru_config(dir.str()), out);
  CHECK(report.exit_code == kExitOk);
  const std::string text = out.str();
  CHECK(text.find("fit.observations = 11") != std::string::npos);
  CHECK(text.find("fit.converged = true") != std::string::npos);
  REQUIRE(report.files.size() == 1);
  CHECK(slurp(report.files[0]).rfind("iter,objective\n", 0) == 0);
}

TEST_CASE("fit command needs a fit section") {
  RunConfig cfg = peru_config("unused");
  cfg.fit.reset();
  std::ostringstream out;
  CHECK_THROWS_AS(cmd_fit(cfg, out), UsageError);
}
