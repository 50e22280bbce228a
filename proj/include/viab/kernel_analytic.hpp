#pragma once

#include <vector>

#include "viab/types.hpp"

namespace viab {

// Growth coefficients evaluated at the biomass floors under the minimal
// catch-meeting efforts.  satisfied means the floors reproduce themselves:
// y_min * r1_at_floor >= y_min and z_min * r2_at_floor >= z_min (for a
// positive floor this is coefficient >= 1; a zero floor imposes nothing).
struct ConditionReport {
  double r1_at_floor = 0.0;
  double r2_at_floor = 0.0;
  bool satisfied = false;
};

// Closed-form maximal catch floors compatible with a non-degenerate kernel.
struct MaxCatchThresholds {
  double c1_star = 0.0;
  double c2_star = 0.0;
};

// Evaluates the sufficient conditions at the floors.  Throws ValidationError
// when a positive catch floor is paired with a zero biomass floor (no finite
// effort can meet such a catch at the floor point).
ConditionReport check_conditions_generic(const GrowthModel& model,
                                         const Thresholds& th);

// Membership in the closed-form kernel of a model satisfying the floor
// conditions:
//   y >= y_min, z >= z_min,
//   y * r1(y, z, c1/y) >= y_min,  z * r2(y, z, c2/z) >= z_min,
// with c/b the minimal catch-meeting efforts.  Re-verifies the conditions and
// throws PreconditionError if they fail.
bool kernel_member_generic(const GrowthModel& model, const Thresholds& th,
                           const State& s);

// Same kernel for models whose predator coefficient ignores z and increases
// in y: the predator inequality is implied by the others, so only three
// checks remain.  Throws PreconditionError if the model's flags do not
// declare that shape, or if the floor conditions fail.
bool kernel_member_no_dd(const GrowthModel& model, const Thresholds& th,
                         const State& s);

// The two Lotka-Volterra threshold conditions guaranteeing that the kernel
// takes its closed form and the maximal catches below are nonnegative:
//   y_min >= (1 - L) / beta,
//   z_min <= (R - 1)/alpha - R (1 - L) / (alpha beta kappa).
bool lv_threshold_conditions(const LotkaVolterraParams& p, double y_min,
                             double z_min);

// Maximal sustainable catch floors at the given biomass floors:
//   c1* = y_min (R - (R/kappa) y_min - alpha z_min - 1)
//   c2* = z_min (L + beta y_min - 1)
// Throws PreconditionError unless lv_threshold_conditions holds.
MaxCatchThresholds lv_max_catch_thresholds(const LotkaVolterraParams& p,
                                           double y_min, double z_min);

// Upper predator bound of the Lotka-Volterra kernel at prey biomass y > 0:
//   (1/alpha) [ R (kappa - y) / kappa - (catch1_min + y_min) / y ].
double lv_kernel_z_bound(const LotkaVolterraParams& p, const Thresholds& th,
                         double y);

// Membership in the Lotka-Volterra kernel in closed form:
//   y >= y_min  and  z_min <= z <= lv_kernel_z_bound(y).
// Throws PreconditionError unless lv_threshold_conditions holds and the
// configured catch floors do not exceed the maximal ones.
bool lv_kernel_member(const LotkaVolterraParams& p, const Thresholds& th,
                      const State& s);

// Largest catch that can be taken from the prey THIS season at state s while
// a viable future remains possible:
//   min{ c1*, y (R - (R/kappa) y - alpha z) - y_min }, floored at 0.
double lv_sustainable_catch_bound(const LotkaVolterraParams& p,
                                  const Thresholds& th, const State& s);

// n >= 2 samples of the kernel's upper boundary, y increasing from y_min to
// the largest prey biomass whose bound still reaches z_min (bisection to 1 t),
// z = max(z_min, bound).  Returns an empty vector when the kernel is empty
// (bound at y_min below z_min); callers report that as a diagnostic.
std::vector<State> lv_kernel_boundary(const LotkaVolterraParams& p,
                                      const Thresholds& th, int n);

}  // namespace viab
