#include "viab/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "viab/format.hpp"
#include "viab/model.hpp"

namespace viab {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

class KeyValues {
 public:
  void insert(const std::string& key, const std::string& value, int line) {
    if (!kv_.emplace(key, value).second)
      throw UsageError("line " + std::to_string(line) + ": duplicate key '" +
                       key + "'");
  }

  bool contains_prefix(const std::string& prefix) const {
    auto it = kv_.lower_bound(prefix);
    return it != kv_.end() && it->first.rfind(prefix, 0) == 0;
  }

  bool contains_section(const std::string& section) const {
    return contains_prefix(section + ".");
  }

  std::optional<std::string> take(const std::string& key) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return std::nullopt;
    std::string v = it->second;
    kv_.erase(it);
    return v;
  }

  std::string require(const std::string& key) {
    auto v = take(key);
    if (!v) throw UsageError("missing required key '" + key + "'");
    return *v;
  }

  std::optional<double> take_number(const std::string& key) {
    auto v = take(key);
    if (!v) return std::nullopt;
    double x;
    if (!parse_double(*v, x))
      throw UsageError("key '" + key + "': cannot parse number '" + *v + "'");
    return x;
  }

  double require_number(const std::string& key) {
    auto x = take_number(key);
    if (!x) throw UsageError("missing required key '" + key + "'");
    return *x;
  }

  std::optional<int> take_int(const std::string& key) {
    auto x = take_number(key);
    if (!x) return std::nullopt;
    if (!(std::floor(*x) == *x) || std::abs(*x) > 2147483647.0)
      throw UsageError("key '" + key + "' must be an integer");
    return static_cast<int>(*x);
  }

  std::optional<bool> take_bool(const std::string& key) {
    auto v = take(key);
    if (!v) return std::nullopt;
    if (*v == "true") return true;
    if (*v == "false") return false;
    throw UsageError("key '" + key + "' must be 'true' or 'false'");
  }

  void reject_leftovers() const {
    if (!kv_.empty())
      throw UsageError("unknown key '" + kv_.begin()->first + "'");
  }

 private:
  std::map<std::string, std::string> kv_;
};

LotkaVolterraParams lv_params_from(KeyValues& kv, const std::string& prefix) {
  const double R = kv.require_number(prefix + "R");
  const double L = kv.require_number(prefix + "L");
  const double alpha = kv.require_number(prefix + "alpha");
  const double beta = kv.require_number(prefix + "beta");
  const auto K = kv.take_number(prefix + "K");
  const auto kappa = kv.take_number(prefix + "kappa");
  if (!K && !kappa)
    throw UsageError("the model needs '" + prefix + "K' or '" + prefix +
                     "kappa'");
  LotkaVolterraParams p;
  try {
    p = K ? LotkaVolterraParams{R, L, alpha, beta, *K}
          : LotkaVolterraParams::from_kappa(R, L, alpha, beta, *kappa);
    p.validate();
  } catch (const ValidationError& e) {
    throw UsageError(std::string("invalid model parameters: ") + e.what());
  }
  if (K && kappa) {
    const double derived = p.kappa();
    if (std::abs(derived - *kappa) > 1e-6 * std::max(std::abs(*kappa), 1.0))
      throw UsageError(prefix + "K and " + prefix +
                       "kappa disagree: kappa derived from K is " +
                       format_double(derived));
  }
  return p;
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto cut = line.find_first_of("#;");
    if (cut != std::string::npos) line.erase(cut);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("line " + std::to_string(lineno) +
                       ": expected 'section.key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.find('.') == std::string::npos || key.empty() || value.empty())
      throw UsageError("line " + std::to_string(lineno) +
                       ": expected 'section.key = value'");
    kv.insert(key, value, lineno);
  }

  RunConfig cfg;

  const std::string kind = kv.require("model.kind");
  if (kind == "lotka_volterra") {
    cfg.model.kind = ModelKind::lotka_volterra;
    cfg.model.lv = lv_params_from(kv, "model.");
    cfg.model.y_max = kv.take_number("model.y_max");
    if (cfg.model.y_max && !(*cfg.model.y_max > 0.0))
      throw UsageError("model.y_max must be > 0");
  } else if (kind == "identity") {
    cfg.model.kind = ModelKind::identity;
  } else {
    throw UsageError("model.kind must be 'lotka_volterra' or 'identity'");
  }

  if (kv.contains_section("thresholds")) {
    Thresholds th;
    th.y_min = kv.require_number("thresholds.y_min");
    th.z_min = kv.require_number("thresholds.z_min");
    th.catch1_min = kv.require_number("thresholds.catch1_min");
    th.catch2_min = kv.require_number("thresholds.catch2_min");
    try {
      th.validate();
    } catch (const ValidationError& e) {
      throw UsageError(std::string("invalid thresholds: ") + e.what());
    }
    cfg.thresholds = th;
  }

  if (kv.contains_section("grid")) {
    GridSection g;
    g.spec.y_lo = kv.require_number("grid.y_lo");
    g.spec.y_hi = kv.require_number("grid.y_hi");
    g.spec.z_lo = kv.require_number("grid.z_lo");
    g.spec.z_hi = kv.require_number("grid.z_hi");
    g.spec.ny = kv.take_int("grid.ny").value_or(-1);
    g.spec.nz = kv.take_int("grid.nz").value_or(-1);
    if (g.spec.ny < 0 || g.spec.nz < 0)
      throw UsageError("grid.ny and grid.nz are required");
    g.spec.samples_v = kv.take_int("grid.samples_v").value_or(32);
    g.spec.samples_w = kv.take_int("grid.samples_w").value_or(32);
    g.spec.v_max = kv.require_number("grid.v_max");
    g.spec.w_max = kv.require_number("grid.w_max");
    g.max_iter = kv.take_int("grid.max_iter").value_or(100);
    try {
      g.spec.validate();
    } catch (const ValidationError& e) {
      throw UsageError(std::string("invalid grid: ") + e.what());
    }
    if (g.max_iter < 0) throw UsageError("grid.max_iter must be >= 0");
    cfg.grid = g;
  }

  if (kv.contains_section("simulate")) {
    SimulateSection s;
    s.s0.y = kv.require_number("simulate.y0");
    s.s0.z = kv.require_number("simulate.z0");
    s.horizon = kv.take_int("simulate.horizon").value_or(100);
    if (s.horizon < 0) throw UsageError("simulate.horizon must be >= 0");
    if (auto pol = kv.take("simulate.policy")) {
      if (*pol == "min_effort")
        s.policy = PolicyKind::min_effort;
      else if (*pol == "max_effort")
        s.policy = PolicyKind::max_effort;
      else if (*pol == "midpoint")
        s.policy = PolicyKind::midpoint;
      else
        throw UsageError(
            "simulate.policy must be min_effort, max_effort or midpoint");
    }
    cfg.simulate = s;
  }

  if (kv.contains_section("fit")) {
    FitSection f;
    f.data = kv.require("fit.data");
    if (auto tol = kv.take_number("fit.tol")) {
      if (!(*tol > 0.0)) throw UsageError("fit.tol must be > 0");
      f.tol = *tol;
    }
    f.max_iter = kv.take_int("fit.max_iter").value_or(500);
    if (f.max_iter < 0) throw UsageError("fit.max_iter must be >= 0");
    if (kv.contains_prefix("fit.init_"))
      f.init = lv_params_from(kv, "fit.init_");
    cfg.fit = f;
  }

  if (auto dir = kv.take("output.dir")) cfg.output.dir = *dir;
  if (auto svg = kv.take_bool("output.svg")) cfg.output.svg = *svg;

  kv.reject_leftovers();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path);
  RunConfig cfg = parse_config(in);
  // Input files named by the config resolve against the config's directory,
  // so a bundled config works from any working directory.
  if (cfg.fit && std::filesystem::path(cfg.fit->data).is_relative())
    cfg.fit->data =
        (std::filesystem::path(path).parent_path() / cfg.fit->data).string();
  return cfg;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  auto put = [&](const std::string& key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  auto putnum = [&](const std::string& key, double x) {
    put(key, format_double(x));
  };

  put("model.kind", c.model.kind == ModelKind::lotka_volterra
                        ? "lotka_volterra"
                        : "identity");
  if (c.model.kind == ModelKind::lotka_volterra && c.model.lv) {
    putnum("model.R", c.model.lv->R);
    putnum("model.L", c.model.lv->L);
    putnum("model.alpha", c.model.lv->alpha);
    putnum("model.beta", c.model.lv->beta);
    putnum("model.K", c.model.lv->K);
    if (c.model.y_max) putnum("model.y_max", *c.model.y_max);
  }
  if (c.thresholds) {
    putnum("thresholds.y_min", c.thresholds->y_min);
    putnum("thresholds.z_min", c.thresholds->z_min);
    putnum("thresholds.catch1_min", c.thresholds->catch1_min);
    putnum("thresholds.catch2_min", c.thresholds->catch2_min);
  }
  if (c.grid) {
    putnum("grid.y_lo", c.grid->spec.y_lo);
    putnum("grid.y_hi", c.grid->spec.y_hi);
    putnum("grid.z_lo", c.grid->spec.z_lo);
    putnum("grid.z_hi", c.grid->spec.z_hi);
    put("grid.ny", std::to_string(c.grid->spec.ny));
    put("grid.nz", std::to_string(c.grid->spec.nz));
    put("grid.samples_v", std::to_string(c.grid->spec.samples_v));
    put("grid.samples_w", std::to_string(c.grid->spec.samples_w));
    putnum("grid.v_max", c.grid->spec.v_max);
    putnum("grid.w_max", c.grid->spec.w_max);
    put("grid.max_iter", std::to_string(c.grid->max_iter));
  }
  if (c.simulate) {
    putnum("simulate.y0", c.simulate->s0.y);
    putnum("simulate.z0", c.simulate->s0.z);
    put("simulate.horizon", std::to_string(c.simulate->horizon));
    const char* pol = c.simulate->policy == PolicyKind::min_effort
                          ? "min_effort"
                          : c.simulate->policy == PolicyKind::max_effort
                                ? "max_effort"
                                : "midpoint";
    put("simulate.policy", pol);
  }
  if (c.fit) {
    put("fit.data", c.fit->data);
    putnum("fit.tol", c.fit->tol);
    put("fit.max_iter", std::to_string(c.fit->max_iter));
    if (c.fit->init) {
      putnum("fit.init_R", c.fit->init->R);
      putnum("fit.init_L", c.fit->init->L);
      putnum("fit.init_alpha", c.fit->init->alpha);
      putnum("fit.init_beta", c.fit->init->beta);
      putnum("fit.init_K", c.fit->init->K);
    }
  }
  put("output.dir", c.output.dir);
  put("output.svg", c.output.svg ? "true" : "false");
  return out.str();
}

GrowthModel model_from_config(const RunConfig& c) {
  if (c.model.kind == ModelKind::identity) return identity_model();
  if (!c.model.lv)
    throw UsageError("a lotka_volterra model section has no parameters");
  return lv_model(*c.model.lv, c.model.y_max);
}

}  // namespace viab
