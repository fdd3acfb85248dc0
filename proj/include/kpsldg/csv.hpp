#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "kpsldg/costmodel.hpp"
#include "kpsldg/run_record.hpp"

namespace kpsldg {

/// Revision of the source tree the library was built from.
std::string git_revision();

/// 17 significant digits, "nan"/"inf" for non-finite values.
std::string format_double(double v);

/// CSV table with `#`-prefixed metadata lines above the header.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_meta(const std::string& key, const std::string& value);
  /// Throws std::invalid_argument if the cell count does not match the header.
  void add_row(std::vector<std::string> cells);

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t size() const { return rows_.size(); }

  void write(std::ostream& os) const;
  /// Creates parent directories as needed.
  void write(const std::string& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::vector<std::string>> rows_;
};

/// Wall time makes output run-dependent, so it is only written on request.
CsvTable run_record_table(const std::vector<RunRecord>& records, bool timing = false);

/// Splits one CSV line, honouring double-quoted cells.
std::vector<std::string> split_csv_line(const std::string& line);

/// Reads a table written by run_record_table (metadata lines are skipped).
/// Throws std::runtime_error on a missing file or a missing column.
std::vector<RunRecord> read_run_records(const std::string& path);
CsvTable cost_point_table(const std::vector<CostAccuracyPoint>& points);

}  // namespace kpsldg
