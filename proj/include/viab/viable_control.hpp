#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "viab/types.hpp"

namespace viab {

// Effort rectangle [v_lo, v_hi] x [w_lo, w_hi] spanned by the minimal
// catch-meeting efforts and the exact controls at a kernel member.  The
// viable-control set is this box intersected with the successor-membership
// conditions; it is generally NOT the whole box.
struct ControlBox {
  double v_lo = 0.0;
  double v_hi = 0.0;
  double w_lo = 0.0;
  double w_hi = 0.0;
};

// Exact controls at a kernel member s: v_hat is the largest effort >= the
// catch floor with y * r1(y, z, v_hat) = y_min, w_hat likewise for the
// predator; applying both sends s exactly to the corner (y_min, z_min).
// Computed in closed form when the model declares an affine effort slope,
// otherwise by bisection on [floor, control_upper_hint] converging to the
// largest root (1e-10 relative tolerance).  Throws NoSolutionError when s is
// not a kernel member and ModelContractError when the hint fails to bracket.
Control hat_controls(const GrowthModel& model, const Thresholds& th,
                     const State& s);

// The effort box at a kernel member (floors to exact controls).
ControlBox viable_control_box(const GrowthModel& model, const Thresholds& th,
                              const State& s);

// True iff u lies in the effort box at s and the successor is itself a
// kernel member; exactly the one-step characterisation of controls that keep
// a viable future open.  Throws like hat_controls.
bool viable_control_member(const GrowthModel& model, const Thresholds& th,
                           const State& s, const Control& u);

enum class PolicyKind { min_effort, max_effort, midpoint };

// A feedback rule together with the membership predicate it respects.
struct FeedbackPolicy {
  PolicyKind kind = PolicyKind::min_effort;
  std::function<bool(const State&)> kernel_member;
};

FeedbackPolicy make_policy(PolicyKind kind, const GrowthModel& model,
                           const Thresholds& th);

// Selects a control in the viable set at kernel member s.
//   min_effort: the catch floors, when they are viable;
//   max_effort: the exact controls, backed off toward the floors by a
//               relative 1e-9 so the successor sits strictly inside;
//   midpoint:   the box midpoint, when viable.
// A candidate that fails viable_control_member is projected along the
// straight segment toward the exact controls (whose successor is the corner,
// a member by the floor conditions): the first viable point of a 64-step
// sweep is returned.  The minimal efforts alone do NOT stay viable near the
// kernel's upper boundary - harvesting the predator at its floor lets it
// overshoot the bound - hence the projection.  Throws PolicyError when s is
// not a kernel member.
Control feedback(const FeedbackPolicy& policy, const GrowthModel& model,
                 const Thresholds& th, const State& s);

// A simulated exploitation path.  states has horizon+1 entries, controls and
// acceptable one per applied season; states[t+1] is exactly
// step(model, states[t], controls[t]), so every run is recomputable.
struct Trajectory {
  std::vector<State> states;
  std::vector<Control> controls;
  std::vector<bool> acceptable;

  // First season whose configuration violated the constraints, if any.
  std::optional<std::size_t> first_violation() const;
};

// Runs the policy for `horizon` seasons from s0.  From a kernel member every
// configuration is acceptable and every visited state stays in the kernel.
// From a non-member the run continues on the minimal catch-meeting efforts
// (0 where a positive catch is unattainable) and records the violations.
Trajectory simulate(const GrowthModel& model, const Thresholds& th,
                    const FeedbackPolicy& policy, const State& s0,
                    int horizon);

}  // namespace viab
