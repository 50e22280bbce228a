#pragma once

#include <functional>
#include <optional>

#include "viab/errors.hpp"

namespace viab {

// Biomasses of the two interacting species, in tonnes.
// y is the harvested prey (e.g. anchovy), z the harvested predator (e.g. hake).
struct State {
  double y = 0.0;
  double z = 0.0;
};

// Harvesting efforts applied over one season: v on the prey, w on the
// predator.  Effort times biomass is the catch.
struct Control {
  double v = 0.0;
  double w = 0.0;
};

// Minimal-biomass and minimal-catch requirements that every season of a
// viable exploitation must satisfy:
//   y >= y_min,  z >= z_min,  v*y >= catch1_min,  w*z >= catch2_min.
struct Thresholds {
  double y_min = 0.0;
  double z_min = 0.0;
  double catch1_min = 0.0;
  double catch2_min = 0.0;

  void validate() const;  // throws ValidationError unless all finite and >= 0
};

// Parameters of the discrete-time harvested predator-prey model
//   y(t+1) = y(t) * (R - (R/kappa) y(t) - alpha z(t) - v(t))
//   z(t+1) = z(t) * (L + beta y(t) - w(t))
// K is the prey carrying capacity; kappa = R K / (R - 1) is derived from it
// and never stored, so the two can never drift apart.
struct LotkaVolterraParams {
  double R = 2.0;        // prey growth factor per season, > 1
  double L = 0.5;        // predator survival factor without prey, in (0, 1)
  double alpha = 1e-6;   // predation pressure on the prey, 1/tonne
  double beta = 1e-8;    // prey-to-predator conversion, 1/tonne
  double K = 1.0;        // prey carrying capacity, tonnes

  double kappa() const { return R * K / (R - 1.0); }

  // Builds params from kappa instead of K (K = kappa (R-1) / R).
  static LotkaVolterraParams from_kappa(double R, double L, double alpha,
                                        double beta, double kappa);

  void validate() const;  // throws ValidationError on any violated invariant
};

// A one-step growth model written multiplicatively,
//   y' = y * r1(y, z, v),   z' = z * r2(y, z, w),
// together with the shape facts the kernel machinery relies on.  The flags
// are declarations by the model author; dedicated tests probe them.
struct GrowthModel {
  std::function<double(double y, double z, double v)> r1;
  std::function<double(double y, double z, double w)> r2;

  bool r1_decreasing_in_v = true;  // non-increasing in its own effort
  bool r2_decreasing_in_w = true;
  bool r2_depends_on_z = true;     // false enables the reduced membership test
  bool r2_increasing_in_y = false;

  // Effort beyond which the corresponding coefficient is <= 0 anywhere on the
  // declared state box; used to bracket root searches for exact controls.
  double control_upper_hint = 0.0;

  // Exact d(r)/d(effort) when the coefficient is affine in the effort; lets
  // exact controls be computed in closed form instead of by bisection.
  std::optional<double> r1_slope_v;
  std::optional<double> r2_slope_w;
};

}  // namespace viab
