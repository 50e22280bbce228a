#pragma once

#include <optional>

#include "viab/types.hpp"

namespace viab {

// Applies one season of dynamics.  Throws EvaluationError if either growth
// coefficient or successor component is non-finite, with (s, u) in the
// message.
State step(const GrowthModel& model, const State& s, const Control& u);

// The harvested Lotka-Volterra model for parameters p.  y_max bounds the
// state box the model declares its shape facts on; the control upper hint is
// max(R, L + beta*y_max) + 1 so both coefficients are <= 0 at the hint
// anywhere on [0, y_max].  Defaults to kappa, which covers the whole kernel
// (the kernel's upper bound is negative at y = kappa).
GrowthModel lv_model(const LotkaVolterraParams& p,
                     std::optional<double> y_max = std::nullopt);

// Trivial dynamics y' = y, z' = z for any effort: every state is a fixed
// point, so the kernel equals the constraint projection when catches are
// free.  Note its coefficients never reach 0, so it has no honest control
// upper hint; exact-control searches on it fail the bracket check on purpose.
GrowthModel identity_model();

// The per-season constraints: y >= y_min, z >= z_min, v*y >= catch1_min,
// w*z >= catch2_min.  Exact comparisons; NaN anywhere makes it false.
bool config_acceptable(const Thresholds& th, const State& s, const Control& u);

// The state-only projection of the constraints: y >= y_min and z >= z_min.
bool state_in_v0(const Thresholds& th, const State& s);

// Smallest effort meeting a catch floor: 0 when the floor is 0 (no catch
// required, whatever the biomass), catch_min / biomass for positive biomass,
// and nullopt when no finite effort attains a positive floor.
std::optional<double> effort_floor(double catch_min, double biomass);

// Like effort_floor, but nudged up by ulps until effort * biomass >= catch_min
// holds exactly, so the returned effort is acceptable under the exact
// comparisons of config_acceptable.  (The raw ratio re-multiplied by the
// biomass can round just below the floor.)
std::optional<double> effort_floor_acceptable(double catch_min, double biomass);

}  // namespace viab
