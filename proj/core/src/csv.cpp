#include "radiopt/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "radiopt/checksum.hpp"

namespace radiopt {

std::string to_hex(std::uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(value));
  return buffer;
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_field_csv(const std::string& path, const SpaceTimeField& field) {
  const Grid& grid = field.grid();
  std::ostringstream out;
  out << "x";
  if (grid.dim() == 2) out << ",y";
  for (int n = 0; n < grid.num_time_nodes(); ++n) {
    out << ",t=" << format_double(grid.time_node(n));
  }
  out << "\n";
  for (int cell = 0; cell < grid.num_cells(); ++cell) {
    const auto center = grid.cell_center(cell);
    out << format_double(center[0]);
    if (grid.dim() == 2) out << "," << format_double(center[1]);
    for (int n = 0; n < grid.num_time_nodes(); ++n) {
      out << "," << format_double(field(cell, n));
    }
    out << "\n";
  }
  write_file(path, out.str());
}

void write_series_csv(const std::string& path, const std::string& header,
                      const std::vector<double>& values) {
  std::ostringstream out;
  out << header << "\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << i << "," << format_double(values[i]) << "\n";
  }
  write_file(path, out.str());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream contents;
  contents << in.rdbuf();
  return contents.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << contents;
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream fields(line);
    std::string token;
    while (std::getline(fields, token, ',')) {
      row.push_back(std::stod(token));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::runtime_error("ragged CSV rows in " + path);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("empty CSV: " + path);
  Eigen::MatrixXd matrix(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      matrix(i, j) = rows[i][j];
    }
  }
  return matrix;
}

}  // namespace radiopt
