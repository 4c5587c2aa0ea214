#pragma once

#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "radiopt/grid.hpp"

namespace radiopt {

/// White-matter region as a union of axis intervals (1D).
struct IntervalRegion {
  std::vector<std::pair<double, double>> intervals;
};

/// White-matter region as an axis-aligned ellipse (2D):
/// ((x-cx)/a)^2 + ((y-cy)/b)^2 <= 1.
struct EllipseRegion {
  std::array<double, 2> center{0.0, 0.0};
  std::array<double, 2> semi_axes{1.0, 1.0};
};

/// Explicit per-cell white/grey labels.
struct LabelRegion {
  std::vector<bool> white;
};

using RegionSpec = std::variant<IntervalRegion, EllipseRegion, LabelRegion>;

/// Cell-wise diffusion coefficient D(x) on a white/grey tissue partition.
class TissueMap {
 public:
  TissueMap() = default;
  TissueMap(Eigen::VectorXd diffusion, std::vector<bool> white,
            double d_white, double d_grey)
      : diffusion_(std::move(diffusion)),
        white_(std::move(white)),
        d_white_(d_white),
        d_grey_(d_grey) {}

  const Eigen::VectorXd& diffusion() const { return diffusion_; }
  double diffusion(int cell) const { return diffusion_[cell]; }
  bool is_white(int cell) const { return white_[cell]; }
  double d_white() const { return d_white_; }
  double d_grey() const { return d_grey_; }

  /// Total measure of the white region (sum of white cell volumes).
  double white_measure(const Grid& grid) const;

 private:
  Eigen::VectorXd diffusion_;
  std::vector<bool> white_;
  double d_white_ = 1.0;
  double d_grey_ = 1.0;
};

/// A cell is white iff its center satisfies the region predicate.
TissueMap build_tissue_map(const Grid& grid, const RegionSpec& region,
                           double d_white, double d_grey);

}  // namespace radiopt
