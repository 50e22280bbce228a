#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "viab/kernel_grid.hpp"
#include "viab/viable_control.hpp"

namespace viab {

// "y,z,member" rows, cell centers, row-major in y then z.
void write_raster_csv(std::ostream& out, const KernelGrid& grid);

// "y,z" rows.
void write_boundary_csv(std::ostream& out, const std::vector<State>& points);

// "t,y,z,v,w,acceptable" rows; the final state row has empty control and
// acceptability fields (no season was applied from it).
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

// Compact run-length text for membership rasters, e.g.
//   rle v1 ny=200 nz=200
//   134x0 66x1 ...
// Runs cover the row-major member sequence.  Round-trips exactly.
std::string rle_encode(const std::vector<std::uint8_t>& member, int ny, int nz);
struct RleRaster {
  int ny = 0, nz = 0;
  std::vector<std::uint8_t> member;
};
RleRaster rle_decode(const std::string& text);

}  // namespace viab
