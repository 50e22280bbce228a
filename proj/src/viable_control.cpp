#include "viab/viable_control.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "viab/kernel_analytic.hpp"
#include "viab/model.hpp"

namespace viab {

namespace {

// Largest effort u >= lo with biomass * r(., u) >= target, for a coefficient
// the model declares non-increasing in the effort.  phi(lo) >= 0 must already
// hold (guaranteed by kernel membership).  Closed form when the model gives
// the affine slope; otherwise bisection maintaining phi(lo) >= 0 > phi(hi),
// which converges to the supremum of {u : phi(u) >= 0} - for a plateau at
// zero, its right edge.
double largest_effort(double biomass, double floor_state, double target,
                      double coeff_at_floor, std::optional<double> slope,
                      double hint,
                      const std::function<double(double)>& coeff) {
  if (biomass == 0.0) return floor_state;  // any effort works; keep the floor

  const double target_coeff = target / biomass;
  if (slope) {
    // coeff(u) = coeff_at_floor + slope (u - floor); solve coeff = target.
    return floor_state + (coeff_at_floor - target_coeff) / (-*slope);
  }

  const double c_hint = coeff(hint);
  if (!(c_hint <= 0.0)) {
    std::ostringstream msg;
    msg << "coefficient is " << c_hint << " at the declared control upper "
        << "hint " << hint << "; the model's limit property fails";
    throw ModelContractError(msg.str());
  }
  auto phi_nonneg = [&](double u) { return biomass * coeff(u) >= target; };
  if (phi_nonneg(hint)) return hint;  // only when target <= 0 exactly

  double lo = floor_state, hi = hint;
  for (int i = 0; i < 200 && (hi - lo) > 1e-10 * std::max(1.0, std::abs(hi));
       ++i) {
    const double mid = 0.5 * (lo + hi);
    (phi_nonneg(mid) ? lo : hi) = mid;
  }
  return lo;
}

Control raw_floor_controls(const Thresholds& th, const State& s) {
  // Membership was already established, so both floors are attainable.
  return {effort_floor(th.catch1_min, s.y).value(),
          effort_floor(th.catch2_min, s.z).value()};
}

}  // namespace

Control hat_controls(const GrowthModel& model, const Thresholds& th,
                     const State& s) {
  if (!kernel_member_generic(model, th, s))
    throw NoSolutionError("exact controls exist only at kernel members");
  const Control lo = raw_floor_controls(th, s);
  const double v_hat = largest_effort(
      s.y, lo.v, th.y_min, model.r1(s.y, s.z, lo.v), model.r1_slope_v,
      model.control_upper_hint,
      [&](double u) { return model.r1(s.y, s.z, u); });
  const double w_hat = largest_effort(
      s.z, lo.w, th.z_min, model.r2(s.y, s.z, lo.w), model.r2_slope_w,
      model.control_upper_hint,
      [&](double u) { return model.r2(s.y, s.z, u); });
  return {v_hat, w_hat};
}

ControlBox viable_control_box(const GrowthModel& model, const Thresholds& th,
                              const State& s) {
  const Control hat = hat_controls(model, th, s);  // throws at non-members
  const Control lo = raw_floor_controls(th, s);
  return {lo.v, hat.v, lo.w, hat.w};
}

bool viable_control_member(const GrowthModel& model, const Thresholds& th,
                           const State& s, const Control& u) {
  const ControlBox box = viable_control_box(model, th, s);
  if (!(u.v >= box.v_lo && u.v <= box.v_hi && u.w >= box.w_lo &&
        u.w <= box.w_hi))
    return false;
  return kernel_member_generic(model, th, step(model, s, u));
}

FeedbackPolicy make_policy(PolicyKind kind, const GrowthModel& model,
                           const Thresholds& th) {
  FeedbackPolicy p;
  p.kind = kind;
  p.kernel_member = [model, th](const State& s) {
    return kernel_member_generic(model, th, s);
  };
  return p;
}

Control feedback(const FeedbackPolicy& policy, const GrowthModel& model,
                 const Thresholds& th, const State& s) {
  if (!policy.kernel_member || !policy.kernel_member(s))
    throw PolicyError("feedback is defined on kernel members only");

  const ControlBox box = viable_control_box(model, th, s);
  const Control hat{box.v_hi, box.w_hi};
  // Acceptable floors: nudged so catch >= floor holds under exact comparison.
  const Control lo{
      std::min(box.v_hi,
               effort_floor_acceptable(th.catch1_min, s.y).value_or(box.v_lo)),
      std::min(box.w_hi,
               effort_floor_acceptable(th.catch2_min, s.z).value_or(box.w_lo))};

  Control cand;
  switch (policy.kind) {
    case PolicyKind::min_effort:
      cand = lo;
      break;
    case PolicyKind::midpoint:
      cand = {lo.v + 0.5 * (hat.v - lo.v), lo.w + 0.5 * (hat.w - lo.w)};
      break;
    case PolicyKind::max_effort:
      // Back off the exact controls a hair so the successor lands strictly
      // inside the corner instead of on an ulp coin-flip.
      cand = {lo.v + (1.0 - 1e-9) * (hat.v - lo.v),
              lo.w + (1.0 - 1e-9) * (hat.w - lo.w)};
      break;
  }

  if (viable_control_member(model, th, s, cand)) return cand;
  // Project along the segment toward the exact controls, whose successor is
  // the floor corner - a member by the very conditions membership requires.
  for (int k = 1; k <= 64; ++k) {
    const double lam = static_cast<double>(k) / 64.0;
    const Control u{cand.v + lam * (hat.v - cand.v),
                    cand.w + lam * (hat.w - cand.w)};
    if (viable_control_member(model, th, s, u)) return u;
  }
  return hat;  // mathematically viable; reachable only on exact-boundary ulps
}

std::optional<std::size_t> Trajectory::first_violation() const {
  for (std::size_t t = 0; t < acceptable.size(); ++t)
    if (!acceptable[t]) return t;
  return std::nullopt;
}

Trajectory simulate(const GrowthModel& model, const Thresholds& th,
                    const FeedbackPolicy& policy, const State& s0,
                    int horizon) {
  if (horizon < 0) throw ValidationError("simulation horizon must be >= 0");
  Trajectory traj;
  traj.states.reserve(horizon + 1);
  traj.controls.reserve(horizon);
  traj.acceptable.reserve(horizon);
  traj.states.push_back(s0);

  State s = s0;
  for (int t = 0; t < horizon; ++t) {
    Control u;
    if (policy.kernel_member && policy.kernel_member(s)) {
      u = feedback(policy, model, th, s);
    } else {
      // Outside the kernel no viable selection exists; keep harvesting at the
      // catch floors (0 where even those are unattainable) and let the
      // acceptability flags record the damage.
      u = {effort_floor_acceptable(th.catch1_min, s.y).value_or(0.0),
           effort_floor_acceptable(th.catch2_min, s.z).value_or(0.0)};
    }
    traj.controls.push_back(u);
    traj.acceptable.push_back(config_acceptable(th, s, u));
    State next;
    try {
      next = step(model, s, u);
    } catch (const EvaluationError&) {
      break;  // dynamics left the floating-point range; truncate the run
    }
    traj.states.push_back(next);
    s = next;
  }
  return traj;
}

}  // namespace viab
