#pragma once

#include <string>

#include "kpsldg/spectral_kp.hpp"

namespace kpsldg {

/// Plain `x,y,u` CSV of an equidistant field.
void write_snapshot_csv(const std::string& path, const GridField2D& u, double t);

/// Binary dump: "KPSNAP01", uint64 n_x, uint64 n_y, binary64 Lx, Ly, t, then
/// the n_x * n_y values row-major (x fastest), all little-endian as stored by
/// the host.
void write_snapshot_binary(const std::string& path, const GridField2D& u, double t);

struct Snapshot {
  GridField2D field;
  double t = 0.0;
};

/// Throws std::runtime_error on a missing file, bad magic or short payload.
Snapshot read_snapshot_binary(const std::string& path);

}  // namespace kpsldg
