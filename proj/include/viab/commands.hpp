#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "viab/config.hpp"

namespace viab {

// Exit codes shared by the commands and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConditionFailure = 1;
inline constexpr int kExitNoConvergence = 2;
inline constexpr int kExitUsage = 64;

// What a command did: exit code, artifacts written (each verified to exist
// and be non-empty), and wall-clock seconds.  Human-readable "key = value"
// lines go to the stream the command was given.
struct RunReport {
  int exit_code = kExitOk;
  std::vector<std::string> files;
  double wall_seconds = 0.0;
};

// Evaluates the floor conditions (and, for Lotka-Volterra models, the
// threshold conditions and maximal catches); exit 0 iff the configuration
// admits the closed-form kernel with the configured catch floors.
RunReport cmd_check(const RunConfig& cfg, std::ostream& out);

// Grid kernel + closed-form boundary + agreement report (+ optional SVG).
// Exit 2 when the grid iteration hits max_iter without stabilising.
RunReport cmd_kernel(const RunConfig& cfg, std::ostream& out);

// Simulates the configured policy and writes the trajectory CSV (+ optional
// SVG with the kernel region).  Exit 1 when any season violated the
// constraints.
RunReport cmd_simulate(const RunConfig& cfg, std::ostream& out);

// Fits Lotka-Volterra parameters to the configured observations CSV and
// writes the per-iteration objective trace.  Exit 2 on non-convergence.
RunReport cmd_fit(const RunConfig& cfg, std::ostream& out);

}  // namespace viab
