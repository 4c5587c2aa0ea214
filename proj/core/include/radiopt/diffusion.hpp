#pragma once

#include <Eigen/Sparse>

#include "radiopt/grid.hpp"
#include "radiopt/tissue.hpp"

namespace radiopt {

/// Sparse symmetric operator encoding -div(D grad .) with homogeneous
/// Neumann boundary (zero flux across boundary faces). Face diffusivities
/// are harmonic means of adjacent cell values, so rows sum to zero and the
/// constant field lies in the kernel.
class DiffusionOperator {
 public:
  DiffusionOperator() = default;
  explicit DiffusionOperator(Eigen::SparseMatrix<double> matrix)
      : matrix_(std::move(matrix)) {}

  const Eigen::SparseMatrix<double>& matrix() const { return matrix_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& v) const { return matrix_ * v; }

 private:
  Eigen::SparseMatrix<double> matrix_;
};

DiffusionOperator assemble_diffusion(const Grid& grid, const TissueMap& tissue);

}  // namespace radiopt
