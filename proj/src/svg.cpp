#include "viab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "viab/format.hpp"

namespace viab {

namespace {

struct Range {
  double lo = 0.0, hi = 1.0;
  void include(double x) {
    if (!std::isfinite(x)) return;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  double span() const { return hi > lo ? hi - lo : 1.0; }
};

}  // namespace

void write_kernel_svg(std::ostream& out, const std::vector<State>& boundary,
                      double z_floor, const std::vector<State>& trajectory,
                      const std::string& title) {
  constexpr double W = 720.0, H = 540.0, M = 60.0;

  Range ry, rz;
  bool any = false;
  for (const auto* pts : {&boundary, &trajectory})
    for (const State& s : *pts) {
      if (!any) {
        ry = {s.y, s.y};
        rz = {s.z, s.z};
        any = true;
      } else {
        ry.include(s.y);
        rz.include(s.z);
      }
    }
  if (!any) {
    ry = {0.0, 1.0};
    rz = {0.0, 1.0};
  }
  rz.include(z_floor);

  auto px = [&](double y) { return M + (y - ry.lo) / ry.span() * (W - 2 * M); };
  auto py = [&](double z) {
    return H - M - (z - rz.lo) / rz.span() * (H - 2 * M);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H
      << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2
      << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">"
      << title << "</text>\n";

  if (!boundary.empty()) {
    out << "<polygon fill=\"#9ecae1\" fill-opacity=\"0.7\" stroke=\"#3182bd\" "
           "stroke-width=\"1.5\" points=\"";
    for (const State& s : boundary)
      out << format_sig6(px(s.y)) << ',' << format_sig6(py(s.z)) << ' ';
    // Close along the biomass floor.
    out << format_sig6(px(boundary.back().y)) << ',' << format_sig6(py(z_floor))
        << ' ' << format_sig6(px(boundary.front().y)) << ','
        << format_sig6(py(z_floor));
    out << "\"/>\n";
  }

  if (!trajectory.empty()) {
    out << "<polyline fill=\"none\" stroke=\"#de2d26\" stroke-width=\"1.5\" "
           "points=\"";
    for (const State& s : trajectory)
      out << format_sig6(px(s.y)) << ',' << format_sig6(py(s.z)) << ' ';
    out << "\"/>\n";
    out << "<circle cx=\"" << format_sig6(px(trajectory.front().y))
        << "\" cy=\"" << format_sig6(py(trajectory.front().z))
        << "\" r=\"4\" fill=\"#de2d26\"/>\n";
  }

  out << "<rect x=\"" << M << "\" y=\"" << M << "\" width=\"" << W - 2 * M
      << "\" height=\"" << H - 2 * M
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << M << "\" y=\"" << H - M + 18
      << "\" font-family=\"sans-serif\" font-size=\"11\">y = "
      << format_sig6(ry.lo) << "</text>\n";
  out << "<text x=\"" << W - M << "\" y=\"" << H - M + 18
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
         "font-size=\"11\">y = "
      << format_sig6(ry.hi) << "</text>\n";
  out << "<text x=\"" << M - 6 << "\" y=\"" << H - M
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
         "font-size=\"11\">z = "
      << format_sig6(rz.lo) << "</text>\n";
  out << "<text x=\"" << M - 6 << "\" y=\"" << M + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
         "font-size=\"11\">z = "
      << format_sig6(rz.hi) << "</text>\n";
  out << "</svg>\n";
}

}  // namespace viab
