#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "viab/types.hpp"

namespace viab {

// A uniform cell grid over the state box [y_lo, y_hi) x [z_lo, z_hi) with
// half-open cells; a cell's representative is its center.  Effort samples per
// state are geometric between the (nudged) catch floor and the cap, so the
// lower end - where viable windows are thinnest - is sampled densest.
struct GridSpec {
  double y_lo = 0.0, y_hi = 1.0;
  double z_lo = 0.0, z_hi = 1.0;
  int ny = 1, nz = 1;
  int samples_v = 32, samples_w = 32;
  double v_max = 1.0, w_max = 1.0;

  void validate() const;  // throws ValidationError

  double dy() const { return (y_hi - y_lo) / ny; }
  double dz() const { return (z_hi - z_lo) / nz; }
  State center(int iy, int iz) const;

  // Cell containing s, or nullopt when s is outside the box.  The box is
  // half-open: points at y_hi or z_hi are outside.
  std::optional<std::pair<int, int>> locate(const State& s) const;
};

// A membership raster over a GridSpec.  member is ny*nz cells, row-major in
// y then z (index iy*nz + iz).  iterations counts refinement sweeps
// performed; converged means the last sweep changed nothing, i.e. the raster
// is a sampled viability domain.
struct KernelGrid {
  GridSpec spec;
  std::vector<std::uint8_t> member;
  int iterations = 0;
  bool converged = false;

  bool at(int iy, int iz) const {
    return member[static_cast<std::size_t>(iy) * spec.nz + iz] != 0;
  }
  std::size_t member_count() const;
};

// Raster of the constraint projection: cell centers with y >= y_min,
// z >= z_min, and positive biomass wherever a positive catch floor must be
// met.  iterations = 0, converged = false.
KernelGrid compute_v0_grid(const GridSpec& spec, const Thresholds& th);

// Decreasing fixed-point iteration from the projection raster: a cell stays
// iff some sampled effort pair is acceptable at its center and sends the
// center into a member cell of the PREVIOUS raster (synchronous sweeps;
// successors outside the box are non-members).  Stops when a sweep changes
// nothing (converged) or after max_iter sweeps.  Honors the VIAB_THREADS
// environment variable for the cell loop; results are identical for any
// thread count.
KernelGrid iterate_kernel(const GridSpec& spec, const GrowthModel& model,
                          const Thresholds& th, int max_iter = 100);

// True iff every member cell center admits a sampled acceptable control
// mapping it into a member cell of the same raster - the defining property
// of a (sampled) viability domain.  Vacuously true for an empty raster.
bool is_viability_domain(const KernelGrid& grid, const GrowthModel& model,
                         const Thresholds& th);

// Geometric effort samples on [floor, cap]: n points with equal ratios and
// the endpoints exact; a zero floor yields {0} followed by a geometric tail
// on [cap*1e-6, cap].  Empty when floor > cap.  Sample sets nest exactly for
// counts n and 2n-1.
std::vector<double> geometric_effort_samples(double floor, double cap, int n);

// Thread count for grid sweeps: VIAB_THREADS clamped to [1, 256], default 1.
int grid_thread_count();

}  // namespace viab
