#include "viab/csv.hpp"

#include <ostream>
#include <sstream>

#include "viab/errors.hpp"
#include "viab/format.hpp"

namespace viab {

void write_raster_csv(std::ostream& out, const KernelGrid& grid) {
  out << "y,z,member\n";
  for (int iy = 0; iy < grid.spec.ny; ++iy)
    for (int iz = 0; iz < grid.spec.nz; ++iz) {
      const State c = grid.spec.center(iy, iz);
      out << format_double(c.y) << ',' << format_double(c.z) << ','
          << int(grid.member[static_cast<std::size_t>(iy) * grid.spec.nz + iz])
          << '\n';
    }
}

void write_boundary_csv(std::ostream& out, const std::vector<State>& points) {
  out << "y,z\n";
  for (const State& p : points)
    out << format_double(p.y) << ',' << format_double(p.z) << '\n';
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,y,z,v,w,acceptable\n";
  for (std::size_t t = 0; t < traj.states.size(); ++t) {
    out << t << ',' << format_double(traj.states[t].y) << ','
        << format_double(traj.states[t].z) << ',';
    if (t < traj.controls.size()) {
      out << format_double(traj.controls[t].v) << ','
          << format_double(traj.controls[t].w) << ','
          << int(traj.acceptable[t]);
    } else {
      out << ",,";
    }
    out << '\n';
  }
}

std::string rle_encode(const std::vector<std::uint8_t>& member, int ny,
                       int nz) {
  if (member.size() != static_cast<std::size_t>(ny) * nz)
    throw ValidationError("raster size does not match ny*nz");
  std::ostringstream out;
  out << "rle v1 ny=" << ny << " nz=" << nz << '\n';
  std::size_t i = 0;
  bool first = true;
  while (i < member.size()) {
    const std::uint8_t val = member[i];
    std::size_t run = 1;
    while (i + run < member.size() && member[i + run] == val) ++run;
    if (!first) out << ' ';
    out << run << 'x' << int(val);
    first = false;
    i += run;
  }
  out << '\n';
  return out.str();
}

RleRaster rle_decode(const std::string& text) {
  std::istringstream in(text);
  std::string magic, version, ny_kv, nz_kv;
  if (!(in >> magic >> version >> ny_kv >> nz_kv) || magic != "rle" ||
      version != "v1" || ny_kv.rfind("ny=", 0) != 0 ||
      nz_kv.rfind("nz=", 0) != 0)
    throw DataError("bad raster header; expected 'rle v1 ny=<n> nz=<n>'");
  RleRaster r;
  try {
    r.ny = std::stoi(ny_kv.substr(3));
    r.nz = std::stoi(nz_kv.substr(3));
  } catch (const std::exception&) {
    throw DataError("bad raster dimensions in header");
  }
  if (r.ny < 1 || r.nz < 1) throw DataError("raster dimensions must be >= 1");

  const std::size_t total = static_cast<std::size_t>(r.ny) * r.nz;
  r.member.reserve(total);
  std::string run;
  while (in >> run) {
    const auto x = run.find('x');
    if (x == std::string::npos || x == 0 || x + 1 >= run.size())
      throw DataError("bad run token '" + run + "'");
    std::size_t count = 0;
    int val = 0;
    try {
      count = std::stoull(run.substr(0, x));
      val = std::stoi(run.substr(x + 1));
    } catch (const std::exception&) {
      throw DataError("bad run token '" + run + "'");
    }
    if (count == 0 || (val != 0 && val != 1))
      throw DataError("bad run token '" + run + "'");
    if (r.member.size() + count > total)
      throw DataError("raster runs exceed ny*nz cells");
    r.member.insert(r.member.end(), count, static_cast<std::uint8_t>(val));
  }
  if (r.member.size() != total)
    throw DataError("raster runs cover fewer than ny*nz cells");
  return r;
}

}  // namespace viab
