#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace tdem {

/// Formats a value in 17-significant-digit scientific notation ("%.16e").
std::string format_double(double v);

/// Column-oriented table of already formatted cells.
class CsvTable {
 public:
  CsvTable() = default;
  explicit CsvTable(std::vector<std::string> header);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& row(std::size_t i) const { return rows_.at(i); }

  void add_row(const std::vector<double>& values);
  void add_row(std::vector<std::string> cells);

  /// Column by name, parsed as doubles. Throws ConfigError naming the column
  /// if it is absent or holds a non-numeric cell.
  std::vector<double> numeric_column(const std::string& name) const;

  void write(std::ostream& out) const;
  /// "-" writes to stdout. Throws IoError when the file cannot be written.
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Reads a comma-separated table with one header row. Blank lines are skipped.
/// Throws IoError on unreadable input or ragged rows.
CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

} // namespace tdem
