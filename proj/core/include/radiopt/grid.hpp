#pragma once

#include <array>
#include <stdexcept>

namespace radiopt {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct GridConfig {
  int dim = 1;
  std::array<double, 2> lengths{1.0, 1.0};  // physical extent per axis
  std::array<int, 2> cells{1, 1};           // cells per axis
  int num_time_steps = 1;
  double final_time = 1.0;
};

/// Uniform cell-centered tensor-product mesh (1D or 2D) with a uniform
/// time partition. Time nodes include both t=0 and t=T. 2D cells are
/// indexed row-major: index = iy * nx + ix.
class Grid {
 public:
  Grid() = default;
  explicit Grid(const GridConfig& config);

  int dim() const { return dim_; }
  int cells(int axis) const { return cells_[axis]; }
  double length(int axis) const { return lengths_[axis]; }
  double spacing(int axis) const { return lengths_[axis] / cells_[axis]; }

  int num_cells() const { return num_cells_; }
  double cell_volume() const { return cell_volume_; }
  double domain_measure() const { return domain_measure_; }

  int num_time_steps() const { return num_time_steps_; }
  int num_time_nodes() const { return num_time_steps_ + 1; }
  double final_time() const { return final_time_; }
  double dt() const { return final_time_ / num_time_steps_; }
  double time_node(int n) const { return n * dt(); }

  std::array<double, 2> cell_center(int index) const;

  int cell_index(int ix, int iy = 0) const { return iy * cells_[0] + ix; }

  bool operator==(const Grid&) const = default;

 private:
  int dim_ = 1;
  std::array<double, 2> lengths_{1.0, 1.0};
  std::array<int, 2> cells_{1, 1};
  int num_time_steps_ = 1;
  double final_time_ = 1.0;
  int num_cells_ = 1;
  double cell_volume_ = 1.0;
  double domain_measure_ = 1.0;
};

Grid build_grid(const GridConfig& config);

}  // namespace radiopt
