#include <doctest.h>

#include <radiopt/grid.hpp>

using namespace radiopt;

TEST_CASE("grid arithmetic on the 1D production mesh") {
  GridConfig cfg;
  cfg.dim = 1;
  cfg.lengths = {5.0, 1.0};
  cfg.cells = {100, 1};
  cfg.num_time_steps = 500;
  cfg.final_time = 0.5;
  Grid grid = build_grid(cfg);

  CHECK(grid.spacing(0) == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(grid.dt() == doctest::Approx(0.001).epsilon(1e-15));
  CHECK(grid.cell_center(0)[0] == doctest::Approx(0.025).epsilon(1e-15));
  CHECK(grid.cell_center(1)[0] == doctest::Approx(0.075).epsilon(1e-15));
  CHECK(grid.num_time_nodes() == 501);
  CHECK(grid.domain_measure() == doctest::Approx(5.0));
  CHECK(grid.time_node(500) == doctest::Approx(0.5));

  // Centers stay strictly inside the domain.
  CHECK(grid.cell_center(0)[0] > 0.0);
  CHECK(grid.cell_center(99)[0] < 5.0);
}

TEST_CASE("grid rejects degenerate extents and counts") {
  GridConfig cfg;
  cfg.lengths = {0.0, 1.0};
  CHECK_THROWS_AS(build_grid(cfg), ConfigError);

  cfg.lengths = {1.0, 1.0};
  cfg.cells = {0, 1};
  CHECK_THROWS_AS(build_grid(cfg), ConfigError);

  cfg.cells = {4, 1};
  cfg.num_time_steps = 0;
  CHECK_THROWS_AS(build_grid(cfg), ConfigError);

  cfg.num_time_steps = 1;
  cfg.final_time = -1.0;
  CHECK_THROWS_AS(build_grid(cfg), ConfigError);

  cfg.final_time = 1.0;
  cfg.dim = 3;
  CHECK_THROWS_AS(build_grid(cfg), ConfigError);
}

TEST_CASE("2D indexing is row major and volumes multiply") {
  GridConfig cfg;
  cfg.dim = 2;
  cfg.lengths = {5.0, 5.0};
  cfg.cells = {8, 4};
  cfg.num_time_steps = 10;
  cfg.final_time = 0.5;
  Grid grid = build_grid(cfg);

  CHECK(grid.num_cells() == 32);
  CHECK(grid.cell_index(3, 2) == 2 * 8 + 3);
  CHECK(grid.cell_volume() == doctest::Approx(grid.spacing(0) * grid.spacing(1)));
  CHECK(grid.domain_measure() == doctest::Approx(25.0));

  auto c = grid.cell_center(grid.cell_index(0, 1));
  CHECK(c[0] == doctest::Approx(grid.spacing(0) / 2));
  CHECK(c[1] == doctest::Approx(1.5 * grid.spacing(1)));
}

TEST_CASE("identical configs build identical grids") {
  GridConfig cfg;
  cfg.dim = 1;
  cfg.lengths = {5.0, 1.0};
  cfg.cells = {64, 1};
  cfg.num_time_steps = 200;
  cfg.final_time = 0.5;
  CHECK(build_grid(cfg) == build_grid(cfg));
}
