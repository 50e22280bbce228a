#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "viab/estimation.hpp"
#include "viab/kernel_grid.hpp"
#include "viab/types.hpp"
#include "viab/viable_control.hpp"

namespace viab {

enum class ModelKind { lotka_volterra, identity };

struct ModelSection {
  ModelKind kind = ModelKind::lotka_volterra;
  std::optional<LotkaVolterraParams> lv;  // required for lotka_volterra
  std::optional<double> y_max;            // optional state-box hint override
};

struct GridSection {
  GridSpec spec;
  int max_iter = 100;
};

struct SimulateSection {
  State s0;
  int horizon = 100;
  PolicyKind policy = PolicyKind::min_effort;
};

struct FitSection {
  std::string data;  // observations CSV path
  std::optional<LotkaVolterraParams> init;  // defaults to the model section
  double tol = 1e-8;
  int max_iter = 500;
};

struct OutputSection {
  std::string dir = "out";
  bool svg = false;
};

// A full run configuration, parsed from flat "section.key = value" text.
// '#'/';' start comments, numbers accept scientific notation and '_' digit
// separators, unknown keys are errors.  Sections beyond model/output are
// optional; each command checks for the ones it needs.
struct RunConfig {
  ModelSection model;
  std::optional<Thresholds> thresholds;
  std::optional<GridSection> grid;
  std::optional<SimulateSection> simulate;
  std::optional<FitSection> fit;
  OutputSection output;
};

RunConfig parse_config(std::istream& in);          // throws UsageError
RunConfig parse_config_file(const std::string& path);

// Canonical rendering: fixed section and key order, shortest round-trip
// numbers.  parse(serialize(c)) reproduces c, and serialize is idempotent on
// its own output.
std::string serialize_config(const RunConfig& c);

// The growth model a config describes (lv_model or identity_model).
GrowthModel model_from_config(const RunConfig& c);

}  // namespace viab
