#include "viab/kernel_grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>
#include <vector>

#include "viab/model.hpp"

namespace viab {

void GridSpec::validate() const {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(y_lo) || !finite(y_hi) || !finite(z_lo) || !finite(z_hi))
    throw ValidationError("grid bounds must be finite");
  if (!(y_lo < y_hi) || !(z_lo < z_hi))
    throw ValidationError("grid bounds must satisfy lo < hi on both axes");
  if (ny < 1 || nz < 1)
    throw ValidationError("grid resolution must be at least 1x1");
  if (samples_v < 1 || samples_w < 1)
    throw ValidationError("control sample counts must be at least 1");
  if (!(finite(v_max) && v_max > 0.0) || !(finite(w_max) && w_max > 0.0))
    throw ValidationError("control caps must be finite and positive");
}

State GridSpec::center(int iy, int iz) const {
  return {y_lo + (iy + 0.5) * dy(), z_lo + (iz + 0.5) * dz()};
}

std::optional<std::pair<int, int>> GridSpec::locate(const State& s) const {
  if (!(s.y >= y_lo && s.y < y_hi && s.z >= z_lo && s.z < z_hi))
    return std::nullopt;
  int iy = static_cast<int>(std::floor((s.y - y_lo) / dy()));
  int iz = static_cast<int>(std::floor((s.z - z_lo) / dz()));
  iy = std::clamp(iy, 0, ny - 1);  // guard rounding at the top edges
  iz = std::clamp(iz, 0, nz - 1);
  return std::make_pair(iy, iz);
}

std::size_t KernelGrid::member_count() const {
  return static_cast<std::size_t>(
      std::count(member.begin(), member.end(), uint8_t{1}));
}

std::vector<double> geometric_effort_samples(double floor, double cap, int n) {
  if (n < 1) throw ValidationError("need at least one control sample");
  if (!(std::isfinite(floor) && std::isfinite(cap)) || floor < 0.0 ||
      cap <= 0.0)
    throw ValidationError("control sample range must be finite, cap > 0");
  if (floor > cap) return {};

  std::vector<double> out;
  out.reserve(n);
  double lo = floor;
  if (floor == 0.0) {
    // Zero is a meaningful effort of its own; cover the rest of the range
    // down to a small positive fraction of the cap.
    out.push_back(0.0);
    if (n == 1) return out;
    lo = cap * 1e-6;
    n -= 1;
  }
  if (n == 1 || lo == cap) {
    out.push_back(lo);
    return out;
  }
  // Uniform steps in log space; the exponent increments are computed from a
  // single rounded step so that doubling the resolution (n -> 2n-1 over the
  // same range) reproduces the coarse samples bit for bit.
  const double span = std::log(cap) - std::log(lo);
  const double step_exp = span / (n - 1);
  for (int j = 0; j < n; ++j) {
    if (j == 0)
      out.push_back(lo);
    else if (j == n - 1)
      out.push_back(cap);
    else
      out.push_back(lo * std::exp(j * step_exp));
  }
  return out;
}

int grid_thread_count() {
  if (const char* env = std::getenv("VIAB_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

bool center_in_constraints(const Thresholds& th, const State& c) {
  if (!(c.y >= th.y_min && c.z >= th.z_min)) return false;
  if (th.catch1_min > 0.0 && !(c.y > 0.0)) return false;
  if (th.catch2_min > 0.0 && !(c.z > 0.0)) return false;
  return true;
}

// One synchronous shrink pass: a cell survives iff its center satisfies the
// state constraints and some sampled acceptable control sends it into a cell
// marked in `prev`.  Results do not depend on how rows are split over
// threads.
std::vector<uint8_t> sweep_once(const GridSpec& spec, const GrowthModel& model,
                                const Thresholds& th,
                                const std::vector<uint8_t>& prev) {
  const std::size_t total = static_cast<std::size_t>(spec.ny) * spec.nz;
  std::vector<uint8_t> next(total, 0);

  auto process_rows = [&](int iy_begin, int iy_end) {
    std::vector<int> izps;
    for (int iy = iy_begin; iy < iy_end; ++iy) {
      const double y = spec.center(iy, 0).y;
      const auto v_floor = effort_floor_acceptable(th.catch1_min, y);
      if (!v_floor) continue;  // catch floor unattainable anywhere in the row
      const auto vs =
          geometric_effort_samples(*v_floor, spec.v_max, spec.samples_v);
      if (vs.empty()) continue;  // floor already above the cap
      for (int iz = 0; iz < spec.nz; ++iz) {
        const std::size_t idx = static_cast<std::size_t>(iy) * spec.nz + iz;
        if (!prev[idx]) continue;
        const State c = spec.center(iy, iz);
        if (!center_in_constraints(th, c)) continue;
        const auto w_floor = effort_floor_acceptable(th.catch2_min, c.z);
        if (!w_floor) continue;
        const auto ws =
            geometric_effort_samples(*w_floor, spec.w_max, spec.samples_w);
        if (ws.empty()) continue;

        izps.clear();
        for (double w : ws) {
          const double zp = c.z * model.r2(c.y, c.z, w);
          int izp = -1;
          if (zp >= spec.z_lo && zp < spec.z_hi) {
            izp = static_cast<int>(std::floor((zp - spec.z_lo) / spec.dz()));
            izp = std::clamp(izp, 0, spec.nz - 1);
          }
          izps.push_back(izp);
        }

        bool viable = false;
        for (double v : vs) {
          const double yp = c.y * model.r1(c.y, c.z, v);
          if (!(yp >= spec.y_lo && yp < spec.y_hi)) continue;
          int iyp = static_cast<int>(std::floor((yp - spec.y_lo) / spec.dy()));
          iyp = std::clamp(iyp, 0, spec.ny - 1);
          const std::size_t base = static_cast<std::size_t>(iyp) * spec.nz;
          for (std::size_t b = 0; b < ws.size(); ++b) {
            const int izp = izps[b];
            if (izp >= 0 && prev[base + izp]) {
              viable = true;
              break;
            }
          }
          if (viable) break;
        }
        if (viable) next[idx] = 1;
      }
    }
  };

  const int threads = std::min(grid_thread_count(), spec.ny);
  if (threads <= 1) {
    process_rows(0, spec.ny);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    const int chunk = (spec.ny + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int lo = t * chunk;
      const int hi = std::min(spec.ny, lo + chunk);
      if (lo < hi) pool.emplace_back(process_rows, lo, hi);
    }
  }
  return next;
}

}  // namespace

KernelGrid compute_v0_grid(const GridSpec& spec, const Thresholds& th) {
  spec.validate();
  th.validate();
  KernelGrid grid;
  grid.spec = spec;
  grid.member.assign(static_cast<std::size_t>(spec.ny) * spec.nz, 0);
  for (int iy = 0; iy < spec.ny; ++iy)
    for (int iz = 0; iz < spec.nz; ++iz)
      if (center_in_constraints(th, spec.center(iy, iz)))
        grid.member[static_cast<std::size_t>(iy) * spec.nz + iz] = 1;
  grid.iterations = 0;
  grid.converged = false;
  return grid;
}

KernelGrid iterate_kernel(const GridSpec& spec, const GrowthModel& model,
                          const Thresholds& th, int max_iter) {
  if (max_iter < 0) throw ValidationError("max_iter must be >= 0");
  KernelGrid grid = compute_v0_grid(spec, th);
  for (int k = 1; k <= max_iter; ++k) {
    std::vector<uint8_t> next = sweep_once(spec, model, th, grid.member);
    grid.iterations = k;
    if (next == grid.member) {
      grid.converged = true;  // stationary: the iteration has reached a
      break;                  // fixed point, hence the grid kernel
    }
    grid.member = std::move(next);
  }
  return grid;
}

bool is_viability_domain(const KernelGrid& grid, const GrowthModel& model,
                         const Thresholds& th) {
  grid.spec.validate();
  if (grid.member.size() !=
      static_cast<std::size_t>(grid.spec.ny) * grid.spec.nz)
    throw ValidationError("raster size does not match the grid resolution");
  return sweep_once(grid.spec, model, th, grid.member) == grid.member;
}

}  // namespace viab
