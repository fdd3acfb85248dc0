#include "kpsldg/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#ifndef KPSLDG_GIT_REVISION
#define KPSLDG_GIT_REVISION "unknown"
#endif

namespace kpsldg {

std::string git_revision() { return KPSLDG_GIT_REVISION; }

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_meta(const std::string& key, const std::string& value) {
  meta_.emplace_back(key, value);
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size())
    throw std::invalid_argument("CsvTable: row has " + std::to_string(cells.size()) +
                                " cells, header has " + std::to_string(columns_.size()));
  rows_.push_back(std::move(cells));
}

namespace {

// Quotes cells that would otherwise break the format.
std::string escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_line(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << escape(cells[i]);
  }
  os << '\n';
}

}  // namespace

void CsvTable::write(std::ostream& os) const {
  for (const auto& [k, v] : meta_) os << "# " << k << ": " << v << '\n';
  write_line(os, columns_);
  for (const auto& r : rows_) write_line(os, r);
}

void CsvTable::write(const std::string& path) const {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write(os);
}

CsvTable run_record_table(const std::vector<RunRecord>& records, bool timing) {
  std::vector<std::string> cols{"study", "scheme", "order", "n_cells", "N_x", "n_x", "n_y",
                                "tau", "n_steps", "t_final", "error", "time_error",
                                "space_error", "iterations", "mass_drift", "status", "note"};
  if (timing) cols.insert(cols.end() - 2, "wall_time");
  CsvTable t(cols);
  for (const auto& r : records) {
    std::vector<std::string> row{r.study, r.scheme, std::to_string(r.order),
                                 std::to_string(r.n_cells), std::to_string(r.N_x),
                                 std::to_string(r.n_x), std::to_string(r.n_y),
                                 format_double(r.tau), std::to_string(r.n_steps),
                                 format_double(r.t_final), format_double(r.error),
                                 format_double(r.time_error), format_double(r.space_error),
                                 std::to_string(r.iterations), format_double(r.mass_drift),
                                 r.ok ? "ok" : "failed", r.note};
    if (timing) row.insert(row.end() - 2, format_double(r.wall_time));
    t.add_row(std::move(row));
  }
  return t;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cells.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else if (c != '\r') {
      cells.back() += c;
    }
  }
  return cells;
}

std::vector<RunRecord> read_run_records(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::vector<std::string> header;
  std::vector<RunRecord> out;
  auto col = [&](const std::vector<std::string>& cells, const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::runtime_error(path + ": missing column " + name);
    return cells.at(static_cast<std::size_t>(it - header.begin()));
  };
  auto num = [](const std::string& s) { return std::strtod(s.c_str(), nullptr); };
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_csv_line(line);
    if (header.empty()) {
      header = std::move(cells);
      continue;
    }
    if (cells.size() != header.size())
      throw std::runtime_error(path + ": row width does not match header");
    RunRecord r;
    r.study = col(cells, "study");
    r.scheme = col(cells, "scheme");
    r.order = std::stoi(col(cells, "order"));
    r.n_cells = std::stoi(col(cells, "n_cells"));
    r.N_x = std::stoi(col(cells, "N_x"));
    r.n_x = std::stoi(col(cells, "n_x"));
    r.n_y = std::stoi(col(cells, "n_y"));
    r.tau = num(col(cells, "tau"));
    r.n_steps = std::stol(col(cells, "n_steps"));
    r.t_final = num(col(cells, "t_final"));
    r.error = num(col(cells, "error"));
    r.time_error = num(col(cells, "time_error"));
    r.space_error = num(col(cells, "space_error"));
    r.iterations = std::stol(col(cells, "iterations"));
    r.mass_drift = num(col(cells, "mass_drift"));
    r.ok = col(cells, "status") == "ok";
    r.note = col(cells, "note");
    if (std::find(header.begin(), header.end(), "wall_time") != header.end())
      r.wall_time = num(col(cells, "wall_time"));
    out.push_back(std::move(r));
  }
  return out;
}

CsvTable cost_point_table(const std::vector<CostAccuracyPoint>& points) {
  CsvTable t({"scheme", "tolerance", "error", "tau", "n_x", "N_x", "n_y", "cost", "balanced",
              "warning", "note"});
  for (const auto& p : points)
    t.add_row({p.scheme, format_double(p.tolerance), format_double(p.error),
               format_double(p.tau), std::to_string(p.n_x), std::to_string(p.N_x),
               std::to_string(p.n_y), format_double(p.cost), p.balanced ? "1" : "0",
               p.warning ? "1" : "0", p.note});
  return t;
}

}  // namespace kpsldg
