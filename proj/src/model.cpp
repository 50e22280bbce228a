#include "viab/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "viab/format.hpp"

namespace viab {

void Thresholds::validate() const {
  const double vals[] = {y_min, z_min, catch1_min, catch2_min};
  const char* names[] = {"y_min", "z_min", "catch1_min", "catch2_min"};
  std::string bad;
  for (int i = 0; i < 4; ++i) {
    if (!std::isfinite(vals[i]) || vals[i] < 0.0) {
      if (!bad.empty()) bad += ", ";
      bad += names[i];
    }
  }
  if (!bad.empty())
    throw ValidationError("thresholds must be finite and >= 0; violated: " + bad);
}

LotkaVolterraParams LotkaVolterraParams::from_kappa(double R, double L,
                                                    double alpha, double beta,
                                                    double kappa) {
  LotkaVolterraParams p;
  p.R = R;
  p.L = L;
  p.alpha = alpha;
  p.beta = beta;
  p.K = kappa * (R - 1.0) / R;
  p.validate();
  return p;
}

void LotkaVolterraParams::validate() const {
  std::string bad;
  auto flag = [&bad](bool ok, const char* what) {
    if (!ok) {
      if (!bad.empty()) bad += ", ";
      bad += what;
    }
  };
  flag(std::isfinite(R) && R > 1.0, "R > 1");
  flag(std::isfinite(L) && L > 0.0 && L < 1.0, "L in (0,1)");
  flag(std::isfinite(alpha) && alpha > 0.0, "alpha > 0");
  flag(std::isfinite(beta) && beta > 0.0, "beta > 0");
  flag(std::isfinite(K) && K > 0.0, "K > 0");
  if (!bad.empty())
    throw ValidationError("invalid growth parameters; need " + bad);
}

State step(const GrowthModel& model, const State& s, const Control& u) {
  const double g1 = model.r1(s.y, s.z, u.v);
  const double g2 = model.r2(s.y, s.z, u.w);
  const State next{s.y * g1, s.z * g2};
  if (!std::isfinite(g1) || !std::isfinite(g2) || !std::isfinite(next.y) ||
      !std::isfinite(next.z)) {
    std::ostringstream msg;
    msg << "non-finite dynamics at state (" << format_double(s.y) << ", "
        << format_double(s.z) << "), control (" << format_double(u.v) << ", "
        << format_double(u.w) << ")";
    throw EvaluationError(msg.str());
  }
  return next;
}

GrowthModel lv_model(const LotkaVolterraParams& p, std::optional<double> y_max) {
  p.validate();
  const double kappa = p.kappa();
  const double ybox = y_max.value_or(kappa);
  if (!std::isfinite(ybox) || ybox <= 0.0)
    throw ValidationError("lv_model y_max must be finite and > 0");

  GrowthModel m;
  const double R = p.R, L = p.L, alpha = p.alpha, beta = p.beta;
  m.r1 = [R, kappa, alpha](double y, double z, double v) {
    return R - (R / kappa) * y - alpha * z - v;
  };
  m.r2 = [L, beta](double y, double /*z*/, double w) { return L + beta * y - w; };
  m.r1_decreasing_in_v = true;
  m.r2_decreasing_in_w = true;
  m.r2_depends_on_z = false;
  m.r2_increasing_in_y = true;
  // At this effort both coefficients are <= 0 for any y in [0, ybox], z >= 0.
  m.control_upper_hint = std::max(R, L + beta * ybox) + 1.0;
  m.r1_slope_v = -1.0;
  m.r2_slope_w = -1.0;
  return m;
}

GrowthModel identity_model() {
  GrowthModel m;
  m.r1 = [](double, double, double) { return 1.0; };
  m.r2 = [](double, double, double) { return 1.0; };
  // Constant coefficients are (weakly) decreasing in the efforts, independent
  // of z, and (weakly) increasing in y.
  m.r1_decreasing_in_v = true;
  m.r2_decreasing_in_w = true;
  m.r2_depends_on_z = false;
  m.r2_increasing_in_y = true;
  m.control_upper_hint = 1.0;  // no honest hint exists; see header
  return m;
}

bool config_acceptable(const Thresholds& th, const State& s, const Control& u) {
  return s.y >= th.y_min && s.z >= th.z_min && u.v * s.y >= th.catch1_min &&
         u.w * s.z >= th.catch2_min;
}

bool state_in_v0(const Thresholds& th, const State& s) {
  return s.y >= th.y_min && s.z >= th.z_min;
}

std::optional<double> effort_floor(double catch_min, double biomass) {
  if (catch_min == 0.0) return 0.0;
  if (biomass > 0.0) return catch_min / biomass;
  return std::nullopt;
}

std::optional<double> effort_floor_acceptable(double catch_min, double biomass) {
  auto v = effort_floor(catch_min, biomass);
  if (!v || catch_min == 0.0) return v;
  // The rounded ratio times the biomass can fall an ulp short of the floor.
  double e = *v;
  while (e * biomass < catch_min)
    e = std::nextafter(e, std::numeric_limits<double>::infinity());
  return e;
}

}  // namespace viab
