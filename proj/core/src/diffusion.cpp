#include "radiopt/diffusion.hpp"

#include <vector>

namespace radiopt {

namespace {

double harmonic_mean(double a, double b) { return 2.0 / (1.0 / a + 1.0 / b); }

}  // namespace

DiffusionOperator assemble_diffusion(const Grid& grid, const TissueMap& tissue) {
  const int n = grid.num_cells();
  const int nx = grid.cells(0);
  const int ny = grid.dim() == 2 ? grid.cells(1) : 1;

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(5 * n);

  auto add_face = [&](int p, int q, double inv_h2) {
    const double coef = harmonic_mean(tissue.diffusion(p), tissue.diffusion(q)) * inv_h2;
    triplets.emplace_back(p, p, coef);
    triplets.emplace_back(q, q, coef);
    triplets.emplace_back(p, q, -coef);
    triplets.emplace_back(q, p, -coef);
  };

  const double inv_hx2 = 1.0 / (grid.spacing(0) * grid.spacing(0));
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix + 1 < nx; ++ix) {
      add_face(grid.cell_index(ix, iy), grid.cell_index(ix + 1, iy), inv_hx2);
    }
  }
  if (grid.dim() == 2) {
    const double inv_hy2 = 1.0 / (grid.spacing(1) * grid.spacing(1));
    for (int iy = 0; iy + 1 < ny; ++iy) {
      for (int ix = 0; ix < nx; ++ix) {
        add_face(grid.cell_index(ix, iy), grid.cell_index(ix, iy + 1), inv_hy2);
      }
    }
  }
  // Ensure the diagonal is structurally present even for a single cell.
  for (int i = 0; i < n; ++i) triplets.emplace_back(i, i, 0.0);

  Eigen::SparseMatrix<double> matrix(n, n);
  matrix.setFromTriplets(triplets.begin(), triplets.end());
  return DiffusionOperator(std::move(matrix));
}

}  // namespace radiopt
