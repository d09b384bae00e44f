#include "tdem/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tdem/errors.hpp"

namespace tdem {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

} // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  add_row(std::move(cells));
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size())
    throw std::invalid_argument("CsvTable: row has " + std::to_string(cells.size()) +
                                " cells, header has " + std::to_string(header_.size()));
  rows_.push_back(std::move(cells));
}

std::vector<double> CsvTable::numeric_column(const std::string& name) const {
  std::size_t c = 0;
  while (c < header_.size() && header_[c] != name) ++c;
  if (c == header_.size()) throw ConfigError("column '" + name + "' not found in CSV header");
  std::vector<double> out;
  out.reserve(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::string& s = rows_[r][c];
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
      throw ConfigError("column '" + name + "', data row " + std::to_string(r + 1) +
                        ": not a number: '" + s + "'");
    out.push_back(v);
  }
  return out;
}

void CsvTable::write(std::ostream& out) const {
  for (std::size_t i = 0; i < header_.size(); ++i) out << (i ? "," : "") << header_[i];
  out << '\n';
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << '\n';
  }
}

void CsvTable::write(const std::string& path) const {
  if (path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream f(path);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  write(f);
  f.close();
  if (!f) throw IoError("error writing '" + path + "'");
}

CsvTable read_csv(std::istream& in) {
  std::string line;
  while (std::getline(in, line) && line.find_first_not_of(" \t\r") == std::string::npos) {}
  if (!in && line.empty()) throw IoError("CSV input is empty");
  CsvTable table(split(line));
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split(line);
    if (cells.size() != table.header().size())
      throw IoError("CSV line " + std::to_string(lineno) + ": expected " +
                    std::to_string(table.header().size()) + " fields, found " +
                    std::to_string(cells.size()));
    table.add_row(std::move(cells));
  }
  if (in.bad()) throw IoError("error reading CSV input");
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open '" + path.string() + "'");
  return read_csv(f);
}

} // namespace tdem
