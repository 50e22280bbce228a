// Acceptance gate: one line per criterion, [PASS] or [FAIL], exit code is the
// number of failed criteria.  Each criterion is independent; an exception
// inside one fails that criterion alone.

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "viab/commands.hpp"
#include "viab/config.hpp"
#include "viab/estimation.hpp"
#include "viab/kernel_analytic.hpp"
#include "viab/kernel_grid.hpp"
#include "viab/model.hpp"
#include "viab/viable_control.hpp"

#ifndef VIAB_SOURCE_DIR
#define VIAB_SOURCE_DIR "."
#endif

using namespace viab;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int idx, const std::string& label, bool ok,
            const std::string& detail = "") {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << idx << ". " << label;
  if (!detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << '\n';
  failures += ok ? 0 : 1;
}

void run(int idx, const std::string& label,
         const std::function<std::pair<bool, std::string>()>& body) {
  try {
    const auto [ok, detail] = body();
    report(idx, label, ok, detail);
  } catch (const std::exception& e) {
    report(idx, label, false, std::string("exception: ") + e.what());
  }
}

LotkaVolterraParams peru_params() {
  return LotkaVolterraParams::from_kappa(2.25, 0.945, 1.220e-6, 4.845e-8,
                                         67113e3);
}

Thresholds peru_thresholds() { return {7e6, 2e5, 2e6, 5e3}; }

GridSpec peru_grid_200() {
  GridSpec spec;
  spec.y_lo = 6e6;
  spec.y_hi = 2e7;
  spec.z_lo = 1e5;
  spec.z_hi = 1e6;
  spec.ny = 200;
  spec.nz = 200;
  spec.samples_v = 32;
  spec.samples_w = 32;
  spec.v_max = 2.5;
  spec.w_max = 2.0;
  return spec;
}

struct Uniform {
  std::mt19937_64 rng;
  explicit Uniform(std::uint64_t seed) : rng(seed) {}
  double operator()(double lo, double hi) {
    return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53);
  }
};

// Uniform draw from the closed-form kernel.
struct KernelSampler {
  LotkaVolterraParams p = peru_params();
  Thresholds th = peru_thresholds();
  double y_right;
  Uniform uni;

  explicit KernelSampler(std::uint64_t seed) : uni(seed) {
    y_right = lv_kernel_boundary(p, th, 2).back().y;
  }
  State draw() {
    for (;;) {
      const double y = uni(th.y_min, y_right);
      const double hi = lv_kernel_z_bound(p, th, y);
      if (hi < th.z_min) continue;
      const State s{y, uni(th.z_min, hi)};
      if (lv_kernel_member(p, th, s)) return s;
    }
  }
};

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(10);
  ss << x;
  return ss.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --------------------------------------------------------------------------

std::pair<bool, std::string> max_catch_reproduction() {
  const auto stars = lv_max_catch_thresholds(peru_params(), 7e6, 2e5);
  const bool ok = std::abs(stars.c1_star - 5399000.0) <= 1000.0 &&
                  std::abs(stars.c2_star - 56800.0) <= 100.0;
  return {ok, "c1*=" + fmt(stars.c1_star) + " t, c2*=" + fmt(stars.c2_star) +
                  " t vs published 5399000 +-1000, 56800 +-100"};
}

std::pair<bool, std::string> reference_config_check() {
  const RunConfig cfg =
      parse_config_file(std::string(VIAB_SOURCE_DIR) + "/configs/peru.cfg");
  std::ostringstream sink;
  const RunReport rep = cmd_check(cfg, sink);
  const auto conditions =
      check_conditions_generic(model_from_config(cfg), *cfg.thresholds);
  const bool ok = rep.exit_code == 0 && conditions.r1_at_floor >= 1.0 &&
                  conditions.r2_at_floor >= 1.0;
  return {ok, "exit=" + std::to_string(rep.exit_code) +
                  ", R1=" + fmt(conditions.r1_at_floor) +
                  ", R2=" + fmt(conditions.r2_at_floor)};
}

std::pair<bool, std::string> stationarity_after_one_sweep() {
  const auto spec = peru_grid_200();
  const auto model = lv_model(peru_params());
  const auto th = peru_thresholds();
  const KernelGrid v1 = iterate_kernel(spec, model, th, 1);
  const KernelGrid v2 = iterate_kernel(spec, model, th, 2);
  const bool ok = v2.converged && v1.member == v2.member;
  return {ok, "members after sweep 1: " + std::to_string(v1.member_count()) +
                  ", after sweep 2: " + std::to_string(v2.member_count())};
}

std::pair<bool, std::string> grid_matches_closed_form() {
  const auto spec = peru_grid_200();
  const auto p = peru_params();
  const auto th = peru_thresholds();
  const KernelGrid kernel = iterate_kernel(spec, lv_model(p), th, 100);

  std::vector<std::uint8_t> analytic(
      static_cast<std::size_t>(spec.ny) * spec.nz, 0);
  for (int iy = 0; iy < spec.ny; ++iy)
    for (int iz = 0; iz < spec.nz; ++iz)
      analytic[static_cast<std::size_t>(iy) * spec.nz + iz] =
          lv_kernel_member(p, th, spec.center(iy, iz)) ? 1 : 0;

  std::size_t diff = 0, off_boundary = 0;
  for (int iy = 0; iy < spec.ny; ++iy)
    for (int iz = 0; iz < spec.nz; ++iz) {
      const std::size_t idx = static_cast<std::size_t>(iy) * spec.nz + iz;
      if (kernel.member[idx] == analytic[idx]) continue;
      ++diff;
      // the analytic boundary must pass within 2 cells (Chebyshev)
      bool near_boundary = false;
      for (int dy = -2; dy <= 2 && !near_boundary; ++dy)
        for (int dz = -2; dz <= 2 && !near_boundary; ++dz) {
          const int jy = iy + dy, jz = iz + dz;
          if (jy < 0 || jy >= spec.ny || jz < 0 || jz >= spec.nz) continue;
          near_boundary =
              analytic[static_cast<std::size_t>(jy) * spec.nz + jz] !=
              analytic[idx];
        }
      off_boundary += near_boundary ? 0 : 1;
    }
  const double fraction =
      static_cast<double>(diff) / static_cast<double>(spec.ny * spec.nz);
  const bool ok = kernel.converged && fraction <= 0.02 && off_boundary == 0;
  return {ok, std::to_string(diff) + " differing cells (" + fmt(fraction) +
                  " of grid), " + std::to_string(off_boundary) +
                  " further than 2 cells from the boundary"};
}

std::pair<bool, std::string> policies_keep_viability() {
  const auto p = peru_params();
  const auto th = peru_thresholds();
  const auto model = lv_model(p);
  KernelSampler sampler(1001);
  int violations = 0, seasons = 0;
  for (const PolicyKind kind :
       {PolicyKind::min_effort, PolicyKind::max_effort, PolicyKind::midpoint}) {
    const auto policy = make_policy(kind, model, th);
    for (int i = 0; i < 100; ++i) {
      const Trajectory traj = simulate(model, th, policy, sampler.draw(), 100);
      if (traj.states.size() != 101 || traj.first_violation().has_value())
        ++violations;
      for (const State& s : traj.states)
        if (!lv_kernel_member(p, th, s)) ++violations;
      seasons += static_cast<int>(traj.acceptable.size());
    }
  }
  return {violations == 0, std::to_string(violations) + " violations over " +
                               std::to_string(seasons) +
                               " seasons, 3 policies x 100 starts"};
}

std::pair<bool, std::string> one_step_control_contracts() {
  const auto th = peru_thresholds();
  const auto model = lv_model(peru_params());
  KernelSampler sampler(2002);
  const int n = 1000;
  int exact_ok = 0, floor_ok = 0, corner_ok = 0;
  for (int i = 0; i < n; ++i) {
    const State s = sampler.draw();
    const Control hat = hat_controls(model, th, s);
    if (std::abs(s.y * model.r1(s.y, s.z, hat.v) - th.y_min) <= 1e-6 * th.y_min)
      ++exact_ok;
    if (viable_control_member(model, th, s,
                              {th.catch1_min / s.y, th.catch2_min / s.z}))
      ++floor_ok;
    const State next = step(model, s, hat);
    if (std::abs(next.y - th.y_min) <= 1e-6 * th.y_min &&
        std::abs(next.z - th.z_min) <= 1e-6 * th.z_min)
      ++corner_ok;
  }
  const bool a = exact_ok == n, b = floor_ok == n, c = corner_ok == n;
  std::cout << "       6a. largest prey effort hits the floor exactly: "
            << exact_ok << "/" << n << (a ? "  [PASS]" : "  [FAIL]") << '\n';
  std::cout << "       6b. floor control is a viable control everywhere: "
            << floor_ok << "/" << n << (b ? "  [PASS]" : "  [FAIL]") << '\n';
  std::cout << "       6c. exact-control successor is the floor corner: "
            << corner_ok << "/" << n << (c ? "  [PASS]" : "  [FAIL]") << '\n';
  return {a && b && c, "see sub-checks above"};
}

std::pair<bool, std::string> reduced_test_agreement() {
  const auto th = peru_thresholds();
  const auto model = lv_model(peru_params());
  Uniform uni(3003);
  int disagreements = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const State s{uni(7e6, 6e7), uni(2e5, 1.2e6)};
    disagreements +=
        kernel_member_no_dd(model, th, s) != kernel_member_generic(model, th, s);
  }
  return {disagreements == 0, std::to_string(disagreements) +
                                  " disagreements over " + std::to_string(n) +
                                  " states"};
}

std::pair<bool, std::string> estimation_round_trip() {
  const auto obs = load_observations_csv_file(
      std::string(VIAB_SOURCE_DIR) + "/data/anchovy_hake_synthetic.csv");
  const auto truth = peru_params();
  const auto init = LotkaVolterraParams::from_kappa(
      truth.R * 0.8, truth.L * 0.8, truth.alpha * 1.2, truth.beta * 0.8,
      truth.kappa() * 1.2);
  FitOptions opts;
  opts.tol = 1e-10;
  opts.max_iter = 500;
  const FitResult res = fit_conjugate_gradient(obs, init, opts);

  const double rel[5] = {
      std::abs(res.params.R - truth.R) / truth.R,
      std::abs(res.params.L - truth.L) / truth.L,
      std::abs(res.params.alpha - truth.alpha) / truth.alpha,
      std::abs(res.params.beta - truth.beta) / truth.beta,
      std::abs(res.params.kappa() - truth.kappa()) / truth.kappa()};
  double worst = 0.0;
  for (double r : rel) worst = std::max(worst, r);
  const bool ok = res.iterations <= 500 && worst < 0.01;
  return {ok, "worst relative error " + fmt(worst) + " after " +
                  std::to_string(res.iterations) + " iterations"};
}

std::pair<bool, std::string> gradient_halving_ratio() {
  const auto obs = load_observations_csv_file(
      std::string(VIAB_SOURCE_DIR) + "/data/anchovy_hake_synthetic.csv");
  const auto truth = peru_params();
  Uniform uni(4004);
  const double h = 1e-3;
  int in_range = 0;
  double lo_ratio = 1e300, hi_ratio = 0.0;
  const int n = 100;
  for (int i = 0; i < n; ++i) {
    const auto p = LotkaVolterraParams::from_kappa(
        1.0 + (truth.R - 1.0) * uni(0.5, 2.0), uni(0.5, 0.99),
        truth.alpha * uni(0.5, 2.0), truth.beta * uni(0.5, 2.0),
        truth.kappa() * uni(0.5, 2.0));
    const CentralGradient g1 = central_gradient(obs, p, h);
    const CentralGradient g2 = central_gradient(obs, p, h / 2.0);
    const CentralGradient g4 = central_gradient(obs, p, h / 4.0);
    // Compare slopes of the objective along relative perturbations: the
    // truncation error of a central difference shrinks 4x when h halves.
    double num = 0.0, den = 0.0;
    const double base[5] = {p.R, p.L, p.alpha, p.beta, p.kappa()};
    for (int k = 0; k < 5; ++k) {
      const double s = std::max(std::abs(base[k]), 1e-12);
      const double d12 = (g1.value[k] - g2.value[k]) * s;
      const double d24 = (g2.value[k] - g4.value[k]) * s;
      num += d12 * d12;
      den += d24 * d24;
    }
    const double ratio = std::sqrt(num / den);
    lo_ratio = std::min(lo_ratio, ratio);
    hi_ratio = std::max(hi_ratio, ratio);
    in_range += (ratio >= 3.0 && ratio <= 5.0) ? 1 : 0;
  }
  return {in_range == n, std::to_string(in_range) + "/" + std::to_string(n) +
                             " ratios in [3,5], range [" + fmt(lo_ratio) +
                             ", " + fmt(hi_ratio) + "]"};
}

std::pair<bool, std::string> byte_identical_reruns() {
  const RunConfig base =
      parse_config_file(std::string(VIAB_SOURCE_DIR) + "/configs/peru.cfg");
  const fs::path root =
      fs::temp_directory_path() / ("viab_accept_" + std::to_string(::getpid()));
  fs::remove_all(root);

  auto run_once = [&](const char* threads, const fs::path& dir) {
    setenv("VIAB_THREADS", threads, 1);
    RunConfig cfg = base;
    cfg.output.dir = dir.string();
    std::ostringstream sink;
    cmd_kernel(cfg, sink);
  };
  run_once("3", root / "a");
  run_once("5", root / "b");
  unsetenv("VIAB_THREADS");

  bool ok = true;
  std::string detail;
  for (const char* name :
       {"kernel_raster.csv", "kernel_boundary.csv", "agreement.txt"}) {
    const bool same = slurp(root / "a" / name) == slurp(root / "b" / name) &&
                      fs::file_size(root / "a" / name) > 0;
    ok = ok && same;
    detail += std::string(name) + (same ? " ok; " : " DIFFERS; ");
  }
  fs::remove_all(root);
  return {ok, detail + "thread counts 3 vs 5"};
}

}  // namespace

int main() {
  std::cout << "acceptance: harvested-ecosystem viability kernels\n";

  run(1, "maximal catches match the published fishery values",
      max_catch_reproduction);
  run(2, "bundled configuration passes the viability check",
      reference_config_check);
  run(3, "grid iteration is stationary after one sweep (200x200, 32x32)",
      stationarity_after_one_sweep);
  run(4, "grid kernel equals the closed form up to a 2-cell boundary band",
      grid_matches_closed_form);
  run(5, "all feedback policies keep 100-step runs viable from 100 starts",
      policies_keep_viability);
  run(6, "one-step control contracts at 1000 random kernel members",
      one_step_control_contracts);
  run(7, "reduced and generic membership tests agree at 10000 states",
      reduced_test_agreement);
  run(8, "fit recovers generating parameters from a 20% off start",
      estimation_round_trip);
  run(9, "central-difference error shrinks 4x when the step halves",
      gradient_halving_ratio);
  run(10, "kernel artifacts are byte-identical across reruns and threads",
      byte_identical_reruns);

  std::cout << (failures == 0 ? "all criteria passed\n"
                              : std::to_string(failures) +
                                    " criterion(s) failed\n");
  return failures;
}
