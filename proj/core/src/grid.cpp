#include "radiopt/grid.hpp"

#include <string>

namespace radiopt {

Grid::Grid(const GridConfig& config) {
  if (config.dim != 1 && config.dim != 2) {
    throw ConfigError("grid.dim must be 1 or 2, got " + std::to_string(config.dim));
  }
  dim_ = config.dim;
  for (int axis = 0; axis < dim_; ++axis) {
    if (config.lengths[axis] <= 0.0) {
      throw ConfigError("grid.lengths[" + std::to_string(axis) + "] must be positive");
    }
    if (config.cells[axis] <= 0) {
      throw ConfigError("grid.cells[" + std::to_string(axis) + "] must be positive");
    }
    lengths_[axis] = config.lengths[axis];
    cells_[axis] = config.cells[axis];
  }
  if (dim_ == 1) {
    lengths_[1] = 1.0;
    cells_[1] = 1;
  }
  if (config.num_time_steps <= 0) {
    throw ConfigError("grid.num_time_steps must be positive");
  }
  if (config.final_time <= 0.0) {
    throw ConfigError("grid.final_time must be positive");
  }
  num_time_steps_ = config.num_time_steps;
  final_time_ = config.final_time;

  num_cells_ = cells_[0] * (dim_ == 2 ? cells_[1] : 1);
  cell_volume_ = spacing(0) * (dim_ == 2 ? spacing(1) : 1.0);
  domain_measure_ = lengths_[0] * (dim_ == 2 ? lengths_[1] : 1.0);
}

std::array<double, 2> Grid::cell_center(int index) const {
  const int ix = index % cells_[0];
  const int iy = index / cells_[0];
  std::array<double, 2> center{(ix + 0.5) * spacing(0), 0.0};
  if (dim_ == 2) {
    center[1] = (iy + 0.5) * spacing(1);
  }
  return center;
}

Grid build_grid(const GridConfig& config) { return Grid(config); }

}  // namespace radiopt
