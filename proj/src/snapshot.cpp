#include "kpsldg/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "kpsldg/csv.hpp"

namespace kpsldg {

namespace {

constexpr char kMagic[8] = {'K', 'P', 'S', 'N', 'A', 'P', '0', '1'};

std::ofstream open_out(const std::string& path, std::ios::openmode mode) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream os(p, mode);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  return os;
}

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& is, const std::string& path) {
  T v;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
    throw std::runtime_error(path + ": truncated snapshot header");
  return v;
}

}  // namespace

void write_snapshot_csv(const std::string& path, const GridField2D& u, double t) {
  CsvTable table({"x", "y", "u"});
  table.add_meta("t", format_double(t));
  table.add_meta("revision", git_revision());
  for (int iy = 0; iy < u.n_y; ++iy)
    for (int ix = 0; ix < u.n_x; ++ix)
      table.add_row({format_double(u.x(ix)), format_double(u.y(iy)), format_double(u.at(ix, iy))});
  table.write(path);
}

void write_snapshot_binary(const std::string& path, const GridField2D& u, double t) {
  auto os = open_out(path, std::ios::binary);
  os.write(kMagic, sizeof kMagic);
  put<std::uint64_t>(os, static_cast<std::uint64_t>(u.n_x));
  put<std::uint64_t>(os, static_cast<std::uint64_t>(u.n_y));
  put(os, u.Lx);
  put(os, u.Ly);
  put(os, t);
  os.write(reinterpret_cast<const char*>(u.values.data()),
           static_cast<std::streamsize>(u.values.size() * sizeof(double)));
  if (!os) throw std::runtime_error("write failed: " + path);
}

Snapshot read_snapshot_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  char magic[8];
  if (!is.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw std::runtime_error(path + ": not a snapshot file");
  const auto nx = get<std::uint64_t>(is, path);
  const auto ny = get<std::uint64_t>(is, path);
  const double Lx = get<double>(is, path);
  const double Ly = get<double>(is, path);
  const double t = get<double>(is, path);
  if (nx == 0 || ny == 0 || nx > (1u << 20) || ny > (1u << 20))
    throw std::runtime_error(path + ": implausible dimensions");
  Snapshot s{GridField2D(static_cast<int>(nx), static_cast<int>(ny), Lx, Ly), t};
  if (!is.read(reinterpret_cast<char*>(s.field.values.data()),
               static_cast<std::streamsize>(s.field.values.size() * sizeof(double))))
    throw std::runtime_error(path + ": truncated snapshot payload");
  return s;
}

}  // namespace kpsldg
