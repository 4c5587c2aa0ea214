#pragma once

#include <string>
#include <vector>

#include "radiopt/field.hpp"

namespace radiopt {

/// Shortest round-trip-safe decimal form (17 significant digits).
std::string format_double(double value);

/// One row per cell: coordinate columns (x[, y]) followed by one column per
/// time node, headed "t=<value>".
void write_field_csv(const std::string& path, const SpaceTimeField& field);

void write_series_csv(const std::string& path, const std::string& header,
                      const std::vector<double>& values);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

/// Whole-field values from a headerless CSV (cells rows, nodes columns).
Eigen::MatrixXd read_matrix_csv(const std::string& path);

}  // namespace radiopt
