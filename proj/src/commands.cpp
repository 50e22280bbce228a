#include "viab/commands.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

#include "viab/csv.hpp"
#include "viab/format.hpp"
#include "viab/kernel_analytic.hpp"
#include "viab/kernel_grid.hpp"
#include "viab/model.hpp"
#include "viab/svg.hpp"
#include "viab/viable_control.hpp"

namespace viab {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

class Timer {
 public:
  Timer() : start_(Clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  Clock::time_point start_;
};

const Thresholds& require_thresholds(const RunConfig& cfg,
                                     const char* command) {
  if (!cfg.thresholds)
    throw UsageError(std::string("the ") + command +
                     " command needs a thresholds section");
  return *cfg.thresholds;
}

// Writes an artifact, verifies it landed non-empty, and records it.
void write_artifact(RunReport& report, std::ostream& out, const fs::path& path,
                    const std::function<void(std::ostream&)>& writer) {
  fs::create_directories(path.parent_path());
  {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot open for writing: " + path.string());
    writer(file);
    if (!file) throw Error("write failed: " + path.string());
  }
  std::error_code ec;
  const auto size = fs::file_size(path, ec);
  if (ec || size == 0)
    throw Error("artifact missing or empty after write: " + path.string());
  report.files.push_back(path.string());
  out << "file = " << path.string() << '\n';
}

void print_bool(std::ostream& out, const char* key, bool value) {
  out << key << " = " << (value ? "true" : "false") << '\n';
}

}  // namespace

RunReport cmd_check(const RunConfig& cfg, std::ostream& out) {
  const Timer timer;
  RunReport report;

  const GrowthModel model = model_from_config(cfg);
  const Thresholds& th = require_thresholds(cfg, "check");
  const ConditionReport rep = check_conditions_generic(model, th);
  out << "check.r1_at_floor = " << format_double(rep.r1_at_floor) << '\n';
  out << "check.r2_at_floor = " << format_double(rep.r2_at_floor) << '\n';
  print_bool(out, "check.conditions_satisfied", rep.satisfied);

  bool ok = rep.satisfied;
  if (cfg.model.kind == ModelKind::lotka_volterra) {
    const LotkaVolterraParams& p = *cfg.model.lv;
    const bool cond = lv_threshold_conditions(p, th.y_min, th.z_min);
    print_bool(out, "lv.threshold_conditions", cond);
    const bool catches_zero = th.catch1_min == 0.0 && th.catch2_min == 0.0;
    if (cond) {
      const MaxCatchThresholds stars =
          lv_max_catch_thresholds(p, th.y_min, th.z_min);
      out << "lv.c1_star = " << format_double(stars.c1_star) << '\n';
      out << "lv.c2_star = " << format_double(stars.c2_star) << '\n';
      const bool within1 = th.catch1_min <= stars.c1_star;
      const bool within2 = th.catch2_min <= stars.c2_star;
      print_bool(out, "lv.catch1_within", within1);
      print_bool(out, "lv.catch2_within", within2);
      ok = ok && (catches_zero || (within1 && within2));
    } else {
      // Without the threshold conditions the closed form offers no room for
      // positive catch floors.
      ok = ok && catches_zero;
    }
  }

  report.exit_code = ok ? kExitOk : kExitConditionFailure;
  report.wall_seconds = timer.seconds();
  out << "check.exit = " << report.exit_code << '\n';
  return report;
}

RunReport cmd_kernel(const RunConfig& cfg, std::ostream& out) {
  const Timer timer;
  RunReport report;

  const GrowthModel model = model_from_config(cfg);
  const Thresholds& th = require_thresholds(cfg, "kernel");
  if (!cfg.grid)
    throw UsageError("the kernel command needs a grid section");
  const fs::path dir = cfg.output.dir;

  const KernelGrid kg =
      iterate_kernel(cfg.grid->spec, model, th, cfg.grid->max_iter);
  out << "kernel.iterations = " << kg.iterations << '\n';
  print_bool(out, "kernel.converged", kg.converged);
  out << "kernel.members = " << kg.member_count() << '\n';
  write_artifact(report, out, dir / "kernel_raster.csv",
                 [&](std::ostream& f) { write_raster_csv(f, kg); });

  std::vector<State> boundary;
  if (cfg.model.kind == ModelKind::lotka_volterra) {
    const LotkaVolterraParams& p = *cfg.model.lv;
    try {
      boundary = lv_kernel_boundary(p, th, 257);
    } catch (const ValidationError& e) {
      out << "kernel.boundary_skipped = " << e.what() << '\n';
    }
    if (boundary.empty()) {
      print_bool(out, "kernel.analytic_empty", true);
    } else {
      write_artifact(report, out, dir / "kernel_boundary.csv",
                     [&](std::ostream& f) { write_boundary_csv(f, boundary); });
    }

    try {
      const GridSpec& spec = kg.spec;
      std::size_t analytic_members = 0, disagreements = 0;
      for (int iy = 0; iy < spec.ny; ++iy)
        for (int iz = 0; iz < spec.nz; ++iz) {
          const bool analytic = lv_kernel_member(p, th, spec.center(iy, iz));
          analytic_members += analytic;
          const bool grid_member =
              kg.member[static_cast<std::size_t>(iy) * spec.nz + iz] != 0;
          disagreements += analytic != grid_member;
        }
      const std::size_t cells =
          static_cast<std::size_t>(spec.ny) * spec.nz;
      const double fraction =
          static_cast<double>(disagreements) / static_cast<double>(cells);
      out << "agreement.disagreements = " << disagreements << '\n';
      out << "agreement.fraction = " << format_double(fraction) << '\n';
      write_artifact(report, out, dir / "agreement.txt", [&](std::ostream& f) {
        f << "cells = " << cells << '\n';
        f << "grid_members = " << kg.member_count() << '\n';
        f << "analytic_members = " << analytic_members << '\n';
        f << "disagreements = " << disagreements << '\n';
        f << "disagreement_fraction = " << format_double(fraction) << '\n';
      });
    } catch (const PreconditionError& e) {
      out << "agreement.skipped = " << e.what() << '\n';
    }
  }

  if (cfg.output.svg && !boundary.empty()) {
    write_artifact(report, out, dir / "kernel.svg", [&](std::ostream& f) {
      write_kernel_svg(f, boundary, th.z_min, {}, "viability kernel");
    });
  }

  report.exit_code = kg.converged ? kExitOk : kExitNoConvergence;
  report.wall_seconds = timer.seconds();
  out << "kernel.exit = " << report.exit_code << '\n';
  return report;
}

RunReport cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const Timer timer;
  RunReport report;

  const GrowthModel model = model_from_config(cfg);
  const Thresholds& th = require_thresholds(cfg, "simulate");
  if (!cfg.simulate)
    throw UsageError("the simulate command needs a simulate section");
  const SimulateSection& sim = *cfg.simulate;
  const fs::path dir = cfg.output.dir;

  const FeedbackPolicy policy = make_policy(sim.policy, model, th);
  const Trajectory traj = simulate(model, th, policy, sim.s0, sim.horizon);

  out << "simulate.steps = " << traj.controls.size() << '\n';
  if (static_cast<int>(traj.controls.size()) < sim.horizon)
    out << "simulate.truncated = true  # dynamics left the representable range"
        << '\n';
  const auto violation = traj.first_violation();
  out << "simulate.first_violation = "
      << (violation ? std::to_string(*violation) : std::string("none"))
      << '\n';
  const State& last = traj.states.back();
  out << "simulate.final_y = " << format_double(last.y) << '\n';
  out << "simulate.final_z = " << format_double(last.z) << '\n';

  write_artifact(report, out, dir / "trajectory.csv",
                 [&](std::ostream& f) { write_trajectory_csv(f, traj); });

  if (cfg.output.svg) {
    std::vector<State> boundary;
    if (cfg.model.kind == ModelKind::lotka_volterra) {
      try {
        boundary = lv_kernel_boundary(*cfg.model.lv, th, 257);
      } catch (const ValidationError&) {
        // plot the trajectory alone
      }
    }
    write_artifact(report, out, dir / "simulate.svg", [&](std::ostream& f) {
      write_kernel_svg(f, boundary, th.z_min, traj.states,
                       "simulated trajectory");
    });
  }

  report.exit_code = violation ? kExitConditionFailure : kExitOk;
  report.wall_seconds = timer.seconds();
  out << "simulate.exit = " << report.exit_code << '\n';
  return report;
}

RunReport cmd_fit(const RunConfig& cfg, std::ostream& out) {
  const Timer timer;
  RunReport report;

  if (!cfg.fit) throw UsageError("the fit command needs a fit section");
  const FitSection& fit = *cfg.fit;
  if (!fit.init && !cfg.model.lv)
    throw UsageError(
        "the fit command needs fit.init_* or a lotka_volterra model section "
        "for the initial guess");
  const LotkaVolterraParams init = fit.init ? *fit.init : *cfg.model.lv;
  const fs::path dir = cfg.output.dir;

  const ObservationSeries obs = load_observations_csv_file(fit.data);
  out << "fit.observations = " << obs.size() << '\n';

  FitOptions opts;
  opts.tol = fit.tol;
  opts.max_iter = fit.max_iter;
  const FitResult res = fit_conjugate_gradient(obs, init, opts);

  out << "fit.R = " << format_double(res.params.R) << '\n';
  out << "fit.L = " << format_double(res.params.L) << '\n';
  out << "fit.alpha = " << format_double(res.params.alpha) << '\n';
  out << "fit.beta = " << format_double(res.params.beta) << '\n';
  out << "fit.K = " << format_double(res.params.K) << '\n';
  out << "fit.kappa = " << format_double(res.params.kappa()) << '\n';
  out << "fit.objective = " << format_double(res.objective) << '\n';
  out << "fit.iterations = " << res.iterations << '\n';
  print_bool(out, "fit.converged", res.converged);
  out << "fit.gradient_norm = " << format_double(res.gradient_norm) << '\n';

  write_artifact(report, out, dir / "fit_trace.csv", [&](std::ostream& f) {
    f << "iter,objective\n";
    for (std::size_t i = 0; i < res.objective_trace.size(); ++i)
      f << i << ',' << format_double(res.objective_trace[i]) << '\n';
  });

  report.exit_code = res.converged ? kExitOk : kExitNoConvergence;
  report.wall_seconds = timer.seconds();
  out << "fit.exit = " << report.exit_code << '\n';
  return report;
}

}  // namespace viab
