#include "viab/kernel_analytic.hpp"

#include <cmath>

#include "viab/model.hpp"

namespace viab {

namespace {

// Floor efforts for the condition/membership tests; a positive catch floor
// over a zero biomass floor has no finite effort.
struct FloorEfforts {
  double v = 0.0, w = 0.0;
};

FloorEfforts floor_efforts_or_throw(const Thresholds& th) {
  th.validate();
  auto v = effort_floor(th.catch1_min, th.y_min);
  auto w = effort_floor(th.catch2_min, th.z_min);
  if (!v || !w)
    throw ValidationError(
        "a positive catch floor requires a positive biomass floor");
  return {*v, *w};
}

void require_conditions(const GrowthModel& model, const Thresholds& th) {
  if (!check_conditions_generic(model, th).satisfied)
    throw PreconditionError(
        "growth conditions at the biomass floors are not satisfied");
}

double finite_or_throw(double g, const char* what) {
  if (!std::isfinite(g))
    throw EvaluationError(std::string("non-finite growth coefficient in ") + what);
  return g;
}

}  // namespace

ConditionReport check_conditions_generic(const GrowthModel& model,
                                         const Thresholds& th) {
  const FloorEfforts u = floor_efforts_or_throw(th);
  ConditionReport rep;
  rep.r1_at_floor = finite_or_throw(model.r1(th.y_min, th.z_min, u.v),
                                    "check_conditions_generic");
  rep.r2_at_floor = finite_or_throw(model.r2(th.y_min, th.z_min, u.w),
                                    "check_conditions_generic");
  // The floors enter multiplied: y_min * r1 >= y_min.  A zero floor therefore
  // imposes no growth condition.
  rep.satisfied = (th.y_min == 0.0 || rep.r1_at_floor >= 1.0) &&
                  (th.z_min == 0.0 || rep.r2_at_floor >= 1.0);
  return rep;
}

bool kernel_member_generic(const GrowthModel& model, const Thresholds& th,
                           const State& s) {
  require_conditions(model, th);
  if (!(s.y >= th.y_min && s.z >= th.z_min)) return false;
  const auto v = effort_floor(th.catch1_min, s.y);
  const auto w = effort_floor(th.catch2_min, s.z);
  if (!v || !w) return false;
  const double y1 = s.y * finite_or_throw(model.r1(s.y, s.z, *v),
                                          "kernel_member_generic");
  if (!(y1 >= th.y_min)) return false;
  const double z1 = s.z * finite_or_throw(model.r2(s.y, s.z, *w),
                                          "kernel_member_generic");
  return z1 >= th.z_min;
}

bool kernel_member_no_dd(const GrowthModel& model, const Thresholds& th,
                         const State& s) {
  if (model.r2_depends_on_z || !model.r2_increasing_in_y)
    throw PreconditionError(
        "kernel_member_no_dd needs a predator coefficient that ignores z and "
        "increases in y (per the model's declared flags)");
  require_conditions(model, th);
  if (!(s.y >= th.y_min && s.z >= th.z_min)) return false;
  const auto v = effort_floor(th.catch1_min, s.y);
  const auto w = effort_floor(th.catch2_min, s.z);
  if (!v || !w) return false;
  // The predator inequality is implied: r2 ignores z, increases in y, and
  // already clears the floor at (y_min, z_min).
  const double y1 =
      s.y * finite_or_throw(model.r1(s.y, s.z, *v), "kernel_member_no_dd");
  return y1 >= th.y_min;
}

bool lv_threshold_conditions(const LotkaVolterraParams& p, double y_min,
                             double z_min) {
  p.validate();
  if (!std::isfinite(y_min) || !std::isfinite(z_min) || y_min < 0.0 ||
      z_min < 0.0)
    throw ValidationError("biomass floors must be finite and >= 0");
  const double kappa = p.kappa();
  const double y_req = (1.0 - p.L) / p.beta;
  const double z_cap =
      (p.R - 1.0) / p.alpha - p.R * (1.0 - p.L) / (p.alpha * p.beta * kappa);
  return y_min >= y_req && z_min <= z_cap;
}

MaxCatchThresholds lv_max_catch_thresholds(const LotkaVolterraParams& p,
                                           double y_min, double z_min) {
  if (!lv_threshold_conditions(p, y_min, z_min))
    throw PreconditionError(
        "threshold conditions fail: need y_min >= (1-L)/beta and z_min <= "
        "(R-1)/alpha - R(1-L)/(alpha beta kappa)");
  const double kappa = p.kappa();
  MaxCatchThresholds out;
  out.c1_star = y_min * (p.R - (p.R / kappa) * y_min - p.alpha * z_min - 1.0);
  out.c2_star = z_min * (p.L + p.beta * y_min - 1.0);
  return out;
}

double lv_kernel_z_bound(const LotkaVolterraParams& p, const Thresholds& th,
                         double y) {
  const double kappa = p.kappa();
  return (1.0 / p.alpha) *
         (p.R * (kappa - y) / kappa - (th.catch1_min + th.y_min) / y);
}

namespace {

void require_lv_kernel_preconditions(const LotkaVolterraParams& p,
                                     const Thresholds& th) {
  th.validate();
  const auto stars = lv_max_catch_thresholds(p, th.y_min, th.z_min);  // throws
  if (!(th.catch1_min <= stars.c1_star && th.catch2_min <= stars.c2_star))
    throw PreconditionError(
        "configured catch floors exceed the maximal sustainable ones");
}

}  // namespace

bool lv_kernel_member(const LotkaVolterraParams& p, const Thresholds& th,
                      const State& s) {
  require_lv_kernel_preconditions(p, th);
  if (!(s.y >= th.y_min && s.z >= th.z_min)) return false;
  if (!(s.y > 0.0)) return false;
  return s.z <= lv_kernel_z_bound(p, th, s.y);
}

double lv_sustainable_catch_bound(const LotkaVolterraParams& p,
                                  const Thresholds& th, const State& s) {
  const auto stars = lv_max_catch_thresholds(p, th.y_min, th.z_min);
  const double kappa = p.kappa();
  const double unharvested =
      s.y * (p.R - (p.R / kappa) * s.y - p.alpha * s.z) - th.y_min;
  return std::max(0.0, std::min(stars.c1_star, unharvested));
}

std::vector<State> lv_kernel_boundary(const LotkaVolterraParams& p,
                                      const Thresholds& th, int n) {
  p.validate();
  th.validate();
  if (n < 2) throw ValidationError("boundary sampling needs n >= 2");
  if (!(th.y_min > 0.0))
    throw ValidationError("boundary sampling needs a positive prey floor");

  const double at_floor = lv_kernel_z_bound(p, th, th.y_min);
  if (!(at_floor >= th.z_min)) return {};  // empty kernel

  // The bound is concave in y and negative at y = kappa, so the rightmost
  // prey biomass still reaching z_min is the single crossing right of y_min.
  double lo = th.y_min, hi = p.kappa();
  while (hi - lo > 1.0) {
    const double mid = 0.5 * (lo + hi);
    if (lv_kernel_z_bound(p, th, mid) >= th.z_min)
      lo = mid;
    else
      hi = mid;
  }
  const double y_right = lo;

  std::vector<State> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    const double y = th.y_min + t * (y_right - th.y_min);
    pts.push_back({y, std::max(th.z_min, lv_kernel_z_bound(p, th, y))});
  }
  return pts;
}

}  // namespace viab
