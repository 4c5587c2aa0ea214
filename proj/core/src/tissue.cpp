#include "radiopt/tissue.hpp"

#include <string>

namespace radiopt {

namespace {

bool center_is_white(const Grid& grid, const RegionSpec& region, int cell) {
  const auto center = grid.cell_center(cell);
  if (const auto* intervals = std::get_if<IntervalRegion>(&region)) {
    for (const auto& [lo, hi] : intervals->intervals) {
      if (center[0] >= lo && center[0] <= hi) return true;
    }
    return false;
  }
  if (const auto* ellipse = std::get_if<EllipseRegion>(&region)) {
    const double ex = (center[0] - ellipse->center[0]) / ellipse->semi_axes[0];
    const double ey = (center[1] - ellipse->center[1]) / ellipse->semi_axes[1];
    return ex * ex + ey * ey <= 1.0;
  }
  const auto& labels = std::get<LabelRegion>(region);
  return labels.white[cell];
}

}  // namespace

double TissueMap::white_measure(const Grid& grid) const {
  double measure = 0.0;
  for (int cell = 0; cell < grid.num_cells(); ++cell) {
    if (white_[cell]) measure += grid.cell_volume();
  }
  return measure;
}

TissueMap build_tissue_map(const Grid& grid, const RegionSpec& region,
                           double d_white, double d_grey) {
  if (d_white <= 0.0 || d_grey <= 0.0) {
    throw ConfigError("tissue diffusion coefficients must be positive");
  }
  if (const auto* labels = std::get_if<LabelRegion>(&region)) {
    if (static_cast<int>(labels->white.size()) != grid.num_cells()) {
      throw ConfigError("tissue label count " + std::to_string(labels->white.size()) +
                        " does not match cell count " + std::to_string(grid.num_cells()));
    }
  }
  if (std::holds_alternative<IntervalRegion>(region) && grid.dim() != 1) {
    throw ConfigError("interval tissue regions require a 1D grid");
  }
  if (std::holds_alternative<EllipseRegion>(region) && grid.dim() != 2) {
    throw ConfigError("ellipse tissue regions require a 2D grid");
  }

  Eigen::VectorXd diffusion(grid.num_cells());
  std::vector<bool> white(grid.num_cells());
  for (int cell = 0; cell < grid.num_cells(); ++cell) {
    white[cell] = center_is_white(grid, region, cell);
    diffusion[cell] = white[cell] ? d_white : d_grey;
  }
  return TissueMap(std::move(diffusion), std::move(white), d_white, d_grey);
}

}  // namespace radiopt
