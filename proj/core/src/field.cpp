#include "radiopt/field.hpp"

#include <string>
#include <utility>

namespace radiopt {

SpaceTimeField::SpaceTimeField(FieldRole role, const Grid& grid, Eigen::MatrixXd values)
    : role_(role), grid_(grid), values_(std::move(values)) {
  if (values_.rows() != grid.num_cells() || values_.cols() != grid.num_time_nodes()) {
    throw ConfigError("field shape " + std::to_string(values_.rows()) + "x" +
                      std::to_string(values_.cols()) + " does not match grid " +
                      std::to_string(grid.num_cells()) + "x" +
                      std::to_string(grid.num_time_nodes()));
  }
}

double integrate(const SpaceTimeField& field) {
  const Grid& grid = field.grid();
  const double dt = grid.dt();
  const int last = grid.num_time_steps();
  Eigen::VectorXd slice_sums = field.values().colwise().sum();
  double total = 0.5 * (slice_sums[0] + slice_sums[last]);
  for (int n = 1; n < last; ++n) total += slice_sums[n];
  return total * grid.cell_volume() * dt;
}

double integrate_steps(const SpaceTimeField& field) {
  const Grid& grid = field.grid();
  double total = 0.0;
  for (int n = 0; n < grid.num_time_steps(); ++n) {
    total += field.values().col(n).sum();
  }
  return total * grid.cell_volume() * grid.dt();
}

double integrate_space(const Grid& grid, const Eigen::VectorXd& values) {
  return values.sum() * grid.cell_volume();
}

double integrate_space(const SpaceTimeField& field, int node) {
  return integrate_space(field.grid(), field.values().col(node));
}

SpaceTimeField clamp_field(const SpaceTimeField& field, double lo, double hi) {
  if (lo > hi) {
    throw ConfigError("clamp bounds violate lo <= hi");
  }
  SpaceTimeField clamped = field;
  clamped.values() = clamped.values().cwiseMax(lo).cwiseMin(hi);
  return clamped;
}

}  // namespace radiopt
