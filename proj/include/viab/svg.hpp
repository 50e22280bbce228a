#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "viab/types.hpp"

namespace viab {

// Self-contained static plot: the kernel as a filled polygon (upper boundary
// samples closed along the floor z = z_min) and an optional trajectory
// polyline.  Axes are framed and labeled with the data ranges.
void write_kernel_svg(std::ostream& out, const std::vector<State>& boundary,
                      double z_floor, const std::vector<State>& trajectory,
                      const std::string& title);

}  // namespace viab
