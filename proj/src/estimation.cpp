#include "viab/estimation.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "viab/format.hpp"

namespace viab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ratio_or_zero(double num, double den) {
  return num == 0.0 ? 0.0 : num / den;
}

}  // namespace

void ObservationSeries::validate() const {
  const std::size_t n = years.size();
  if (n < 3) throw DataError("need at least 3 observation rows");
  if (y_obs.size() != n || z_obs.size() != n || catch_y.size() != n ||
      catch_z.size() != n)
    throw DataError("observation columns have unequal lengths");
  if (weight_y.size() != weight_z.size() ||
      (!weight_y.empty() && weight_y.size() != n))
    throw DataError("weight columns must both be absent or full length");

  for (std::size_t t = 0; t < n; ++t) {
    if (t > 0 && !(years[t] > years[t - 1]))
      throw DataError("years must be strictly increasing");
    if (!(std::isfinite(y_obs[t]) && y_obs[t] >= 0.0) ||
        !(std::isfinite(z_obs[t]) && z_obs[t] >= 0.0))
      throw DataError("biomasses must be finite and >= 0");
    if (!(std::isfinite(catch_y[t]) && catch_y[t] >= 0.0) ||
        !(std::isfinite(catch_z[t]) && catch_z[t] >= 0.0))
      throw DataError("catches must be finite and >= 0");
    if ((catch_y[t] > 0.0 && !(y_obs[t] > 0.0)) ||
        (catch_z[t] > 0.0 && !(z_obs[t] > 0.0)))
      throw DataError("a positive catch needs a positive biomass");
    if (weight_y.empty()) {
      // Default weighting divides by the observations.
      if (!(y_obs[t] > 0.0 && z_obs[t] > 0.0))
        throw DataError(
            "default (relative) weighting needs strictly positive biomasses");
    } else if (!(std::isfinite(weight_y[t]) && weight_y[t] >= 0.0) ||
               !(std::isfinite(weight_z[t]) && weight_z[t] >= 0.0)) {
      throw DataError("weights must be finite and >= 0");
    }
  }
}

ObservationSeries load_observations_csv(std::istream& in) {
  ObservationSeries obs;
  std::string line;
  std::size_t lineno = 0;
  int ncols = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = line;
    const auto pos = trimmed.find_first_not_of(" \t");
    trimmed = pos == std::string::npos ? std::string{} : trimmed.substr(pos);
    if (trimmed.empty() || trimmed[0] == '#') continue;

    std::vector<std::string> fields;
    std::stringstream ss(trimmed);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!trimmed.empty() && trimmed.back() == ',') fields.push_back("");

    double first;
    if (obs.years.empty() && !parse_double(fields.empty() ? "" : fields[0],
                                           first)) {
      continue;  // header row
    }
    if (fields.size() != 5 && fields.size() != 7)
      throw DataError("line " + std::to_string(lineno) +
                      ": expected 5 or 7 comma-separated fields");
    if (ncols == 0) ncols = static_cast<int>(fields.size());
    if (static_cast<int>(fields.size()) != ncols)
      throw DataError("line " + std::to_string(lineno) +
                      ": inconsistent number of fields");

    std::vector<double> row(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i)
      if (!parse_double(fields[i], row[i]))
        throw DataError("line " + std::to_string(lineno) +
                        ": cannot parse number '" + fields[i] + "'");
    obs.years.push_back(row[0]);
    obs.y_obs.push_back(row[1]);
    obs.z_obs.push_back(row[2]);
    obs.catch_y.push_back(row[3]);
    obs.catch_z.push_back(row[4]);
    if (ncols == 7) {
      obs.weight_y.push_back(row[5]);
      obs.weight_z.push_back(row[6]);
    }
  }
  obs.validate();
  return obs;
}

ObservationSeries load_observations_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open observation file: " + path);
  return load_observations_csv(in);
}

std::vector<Control> efforts_from_observations(const ObservationSeries& obs) {
  obs.validate();
  std::vector<Control> efforts;
  efforts.reserve(obs.size());
  for (std::size_t t = 0; t < obs.size(); ++t)
    efforts.push_back({ratio_or_zero(obs.catch_y[t], obs.y_obs[t]),
                       ratio_or_zero(obs.catch_z[t], obs.z_obs[t])});
  return efforts;
}

double weighted_ssr(const LotkaVolterraParams& p,
                    const ObservationSeries& obs) {
  p.validate();
  obs.validate();
  const double kappa = p.kappa();
  const bool default_weights = obs.weight_y.empty();
  double ssr = 0.0;
  for (std::size_t t = 0; t + 1 < obs.size(); ++t) {
    const double y = obs.y_obs[t], z = obs.z_obs[t];
    const double v = ratio_or_zero(obs.catch_y[t], y);
    const double w = ratio_or_zero(obs.catch_z[t], z);
    const double y_pred = y * (p.R - (p.R / kappa) * y - p.alpha * z - v);
    const double z_pred = z * (p.L + p.beta * y - w);
    const double wy = default_weights
                          ? 1.0 / (obs.y_obs[t + 1] * obs.y_obs[t + 1])
                          : obs.weight_y[t + 1];
    const double wz = default_weights
                          ? 1.0 / (obs.z_obs[t + 1] * obs.z_obs[t + 1])
                          : obs.weight_z[t + 1];
    const double ry = y_pred - obs.y_obs[t + 1];
    const double rz = z_pred - obs.z_obs[t + 1];
    ssr += wy * ry * ry + wz * rz * rz;
  }
  return std::isfinite(ssr) ? ssr : kInf;
}

namespace {

std::array<double, 5> param_vector(const LotkaVolterraParams& p) {
  return {p.R, p.L, p.alpha, p.beta, p.kappa()};
}

std::optional<LotkaVolterraParams> try_params(std::array<double, 5> v) {
  try {
    return LotkaVolterraParams::from_kappa(v[0], v[1], v[2], v[3], v[4]);
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

}  // namespace

CentralGradient central_gradient(const ObservationSeries& obs,
                                 const LotkaVolterraParams& p, double h) {
  if (!(std::isfinite(h) && h > 0.0))
    throw ValidationError("central-difference step must be finite and > 0");
  p.validate();
  obs.validate();
  const std::array<double, 5> base = param_vector(p);
  CentralGradient g;
  for (int i = 0; i < 5; ++i) {
    const double scale = std::max(std::abs(base[i]), 1e-12);
    double step = h * scale;
    std::optional<LotkaVolterraParams> plus, minus;
    int tries = 0;
    for (; tries < 200; ++tries) {
      auto up = base, dn = base;
      up[i] += step;
      dn[i] -= step;
      plus = try_params(up);
      minus = try_params(dn);
      if (plus && minus) break;
      step *= 0.5;
    }
    if (tries == 200)
      throw ValidationError(
          "no central-difference step keeps the parameters valid");
    g.step[i] = step;
    g.value[i] =
        (weighted_ssr(*plus, obs) - weighted_ssr(*minus, obs)) / (2.0 * step);
  }
  return g;
}

namespace {

// Unconstrained coordinates covering exactly the valid parameter region.
std::array<double, 5> to_internal(const LotkaVolterraParams& p) {
  return {std::log(p.R - 1.0), std::log(p.L / (1.0 - p.L)), std::log(p.alpha),
          std::log(p.beta), std::log(p.kappa())};
}

LotkaVolterraParams from_internal(const std::array<double, 5>& t) {
  const double R = 1.0 + std::exp(t[0]);
  const double L = 1.0 / (1.0 + std::exp(-t[1]));
  return LotkaVolterraParams::from_kappa(R, L, std::exp(t[2]), std::exp(t[3]),
                                         std::exp(t[4]));
}

double dot(const std::array<double, 5>& a, const std::array<double, 5>& b) {
  double s = 0.0;
  for (int i = 0; i < 5; ++i) s += a[i] * b[i];
  return s;
}

double inf_norm(const std::array<double, 5>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

FitResult fit_conjugate_gradient(const ObservationSeries& obs,
                                 const LotkaVolterraParams& init,
                                 const FitOptions& opts) {
  obs.validate();
  init.validate();
  if (!(opts.tol > 0.0) || opts.max_iter < 0 || !(opts.fd_step > 0.0))
    throw ValidationError("fit options must have tol > 0, fd_step > 0, "
                          "max_iter >= 0");

  auto objective = [&](const std::array<double, 5>& t) -> double {
    try {
      return weighted_ssr(from_internal(t), obs);
    } catch (const ValidationError&) {
      return kInf;  // exp over/underflow pushed a parameter out of range
    }
  };
  auto gradient = [&](const std::array<double, 5>& t) {
    std::array<double, 5> g{};
    for (int i = 0; i < 5; ++i) {
      const double d = opts.fd_step * std::max(std::abs(t[i]), 1.0);
      auto up = t, dn = t;
      up[i] += d;
      dn[i] -= d;
      g[i] = (objective(up) - objective(dn)) / (2.0 * d);
    }
    return g;
  };

  std::array<double, 5> t = to_internal(init);
  double f = objective(t);
  std::array<double, 5> g = gradient(t);
  std::array<double, 5> d{};
  for (int i = 0; i < 5; ++i) d[i] = -g[i];

  FitResult res;
  res.objective_trace.push_back(f);
  int since_restart = 0;

  while (res.iterations < opts.max_iter) {
    if (inf_norm(g) <= opts.tol) break;

    if (dot(d, g) >= 0.0) {  // not a descent direction: restart
      for (int i = 0; i < 5; ++i) d[i] = -g[i];
      since_restart = 0;
    }

    bool accepted = false;
    std::array<double, 5> t_new{};
    double f_new = 0.0;
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      const double slope = dot(g, d);
      double alpha = 1.0;
      while (alpha > 1e-20) {
        for (int i = 0; i < 5; ++i) t_new[i] = t[i] + alpha * d[i];
        f_new = objective(t_new);
        if (f_new <= f + 1e-4 * alpha * slope) {
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted) {
        if (attempt == 1) break;
        for (int i = 0; i < 5; ++i) d[i] = -g[i];  // one steepest retry
        since_restart = 0;
      }
    }
    if (!accepted) break;  // no decrease even along steepest descent

    const std::array<double, 5> g_new = gradient(t_new);
    ++res.iterations;
    ++since_restart;
    res.objective_trace.push_back(f_new);

    double beta = 0.0;
    if (since_restart % 5 != 0) {
      double num = 0.0;
      for (int i = 0; i < 5; ++i) num += g_new[i] * (g_new[i] - g[i]);
      const double den = dot(g, g);
      if (den > 0.0) beta = std::max(0.0, num / den);
    }
    for (int i = 0; i < 5; ++i) d[i] = -g_new[i] + beta * d[i];
    t = t_new;
    f = f_new;
    g = g_new;
  }

  res.params = from_internal(t);
  res.objective = f;
  res.gradient_norm = inf_norm(g);
  res.converged = res.gradient_norm <= opts.tol;
  return res;
}

}  // namespace viab
