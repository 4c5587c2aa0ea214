#include <doctest.h>

#include <radiopt/field.hpp>
#include <radiopt/rng.hpp>

using namespace radiopt;

namespace {

Grid make_grid(double length, double T, int cells, int steps) {
  GridConfig cfg;
  cfg.dim = 1;
  cfg.lengths = {length, 1.0};
  cfg.cells = {cells, 1};
  cfg.num_time_steps = steps;
  cfg.final_time = T;
  return build_grid(cfg);
}

}  // namespace

TEST_CASE("integrate is exact on constant fields") {
  Grid grid = make_grid(5.0, 0.5, 100, 50);
  SpaceTimeField ones(FieldRole::state, grid);
  ones.values().setOnes();
  CHECK(integrate(ones) == doctest::Approx(2.5).epsilon(1e-14));

  SpaceTimeField zero(FieldRole::state, grid);
  CHECK(integrate(zero) == 0.0);
}

TEST_CASE("integrate is exact on linear-in-time fields") {
  Grid grid = make_grid(1.0, 1.0, 10, 7);
  SpaceTimeField f(FieldRole::state, grid);
  for (int n = 0; n < grid.num_time_nodes(); ++n) {
    f.values().col(n).setConstant(grid.time_node(n));
  }
  // int_0^1 t dt = 1/2 exactly under the trapezoid rule.
  CHECK(integrate(f) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("integrate_steps matches the piecewise-constant convention") {
  Grid grid = make_grid(2.0, 1.0, 4, 5);
  SpaceTimeField r(FieldRole::control, grid);
  r.values().setOnes();
  // Node N carries no step weight.
  r.values().col(grid.num_time_steps()).setConstant(100.0);
  CHECK(integrate_steps(r) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("integrate is linear") {
  Grid grid = make_grid(5.0, 0.5, 32, 20);
  Rng rng(7);
  SpaceTimeField f(FieldRole::state, grid), g(FieldRole::state, grid);
  for (int n = 0; n < grid.num_time_nodes(); ++n) {
    for (int i = 0; i < grid.num_cells(); ++i) {
      f(i, n) = rng.uniform(-1.0, 1.0);
      g(i, n) = rng.uniform(-1.0, 1.0);
    }
  }
  const double alpha = 0.3, beta = -1.7;
  SpaceTimeField combo(FieldRole::state, grid,
                       alpha * f.values() + beta * g.values());
  const double lhs = integrate(combo);
  const double rhs = alpha * integrate(f) + beta * integrate(g);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("clamp_field clamps exactly and is idempotent") {
  Grid grid = make_grid(1.0, 1.0, 3, 2);
  SpaceTimeField f(FieldRole::control, grid);
  f(0, 0) = 1.5;
  f(1, 0) = -0.2;
  f(2, 0) = 0.4;
  SpaceTimeField c = clamp_field(f, 0.0, 1.0);
  CHECK(c(0, 0) == 1.0);
  CHECK(c(1, 0) == 0.0);
  CHECK(c(2, 0) == 0.4);
  CHECK(c.values().minCoeff() >= 0.0);
  CHECK(c.values().maxCoeff() <= 1.0);
  SpaceTimeField cc = clamp_field(c, 0.0, 1.0);
  CHECK(cc.values() == c.values());
}

TEST_CASE("clamp_field rejects inverted bounds") {
  Grid grid = make_grid(1.0, 1.0, 2, 1);
  SpaceTimeField f(FieldRole::control, grid);
  CHECK_THROWS_AS(clamp_field(f, 1.0, 0.0), ConfigError);
}

TEST_CASE("field shape follows the grid") {
  Grid grid = make_grid(1.0, 1.0, 6, 4);
  SpaceTimeField f(FieldRole::adjoint, grid);
  CHECK(f.values().rows() == 6);
  CHECK(f.values().cols() == 5);
  CHECK(f.all_finite());
  CHECK_THROWS_AS(SpaceTimeField(FieldRole::state, grid, Eigen::MatrixXd::Zero(6, 4)),
                  ConfigError);
}

TEST_CASE("integrate_space weights cell values by volume") {
  Grid grid = make_grid(5.0, 0.5, 100, 10);
  Eigen::VectorXd v = Eigen::VectorXd::Constant(100, 2.0);
  CHECK(integrate_space(grid, v) == doctest::Approx(10.0).epsilon(1e-14));
}
