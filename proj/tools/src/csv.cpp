#include "csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace ctrex::cli {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trimmed(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

double parse_cell(const std::string& raw, const std::string& path,
                  std::size_t row, const std::string& column) {
  const std::string cell = trimmed(raw);
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || cell.empty() ||
      !std::isfinite(value)) {
    throw NonNumericCell(path + ": row " + std::to_string(row) +
                         ", column '" + column + "': cell '" + raw +
                         "' is not a finite number");
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

ComplexTable read_complex_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvError(path + ": cannot open file");

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw CsvError(path + ": empty file");

  const std::vector<std::string> header = split_line(lines[0]);
  if (header.empty() || header.size() % 2 != 0) {
    throw UnpairedColumn(path + ": header has " +
                         std::to_string(header.size()) +
                         " columns; expected an even count of .re/.im pairs");
  }
  const std::size_t p = header.size() / 2;

  ComplexTable table;
  table.names.reserve(p);
  for (std::size_t j = 0; j < p; ++j) {
    const std::string re = trimmed(header[2 * j]);
    const std::string im = trimmed(header[2 * j + 1]);
    const bool re_ok = re.size() > 3 && re.ends_with(".re");
    const bool im_ok = im.size() > 3 && im.ends_with(".im");
    if (!re_ok || !im_ok ||
        re.substr(0, re.size() - 3) != im.substr(0, im.size() - 3)) {
      throw UnpairedColumn(path + ": header columns '" + header[2 * j] +
                           "' and '" + header[2 * j + 1] +
                           "' do not form a <name>.re/<name>.im pair");
    }
    table.names.push_back(re.substr(0, re.size() - 3));
  }

  const std::size_t n = lines.size() - 1;
  table.values = CMatrix(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<std::string> cells = split_line(lines[i + 1]);
    if (cells.size() != header.size()) {
      throw RaggedRows(path + ": row " + std::to_string(i + 1) + " has " +
                       std::to_string(cells.size()) + " cells; expected " +
                       std::to_string(header.size()));
    }
    for (std::size_t j = 0; j < p; ++j) {
      const double re = parse_cell(cells[2 * j], path, i + 1, header[2 * j]);
      const double im =
          parse_cell(cells[2 * j + 1], path, i + 1, header[2 * j + 1]);
      table.values(i, j) = {re, im};
    }
  }
  return table;
}

CMatrix parse_complex_csv(const std::string& path) {
  return read_complex_table(path).values;
}

void write_complex_table(const std::string& path, const ComplexTable& table) {
  if (table.names.size() != table.values.cols()) {
    throw DimensionMismatch(path + ": header names do not match columns");
  }
  std::ofstream out(path);
  if (!out) throw CsvError(path + ": cannot open file for writing");
  for (std::size_t j = 0; j < table.names.size(); ++j) {
    if (j) out << ',';
    out << table.names[j] << ".re," << table.names[j] << ".im";
  }
  out << '\n';
  for (std::size_t i = 0; i < table.values.rows(); ++i) {
    for (std::size_t j = 0; j < table.values.cols(); ++j) {
      if (j) out << ',';
      out << format_double(table.values(i, j).real()) << ','
          << format_double(table.values(i, j).imag());
    }
    out << '\n';
  }
}

}  // namespace ctrex::cli
