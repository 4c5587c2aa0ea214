#include <benchmark/benchmark.h>

#include <cmath>
#include <radiopt/bathtub.hpp>
#include <radiopt/control.hpp>
#include <radiopt/rng.hpp>
#include <radiopt/solvers.hpp>

using namespace radiopt;

namespace {

Grid grid_1d(int cells, int steps) {
  GridConfig cfg;
  cfg.dim = 1;
  cfg.lengths = {5.0, 1.0};
  cfg.cells = {cells, 1};
  cfg.num_time_steps = steps;
  cfg.final_time = 0.5;
  return build_grid(cfg);
}

Grid grid_2d(int cells_per_axis, int steps) {
  GridConfig cfg;
  cfg.dim = 2;
  cfg.lengths = {5.0, 5.0};
  cfg.cells = {cells_per_axis, cells_per_axis};
  cfg.num_time_steps = steps;
  cfg.final_time = 0.5;
  return build_grid(cfg);
}

ForwardProblem problem_1d(const Grid& grid) {
  ForwardProblem p;
  p.grid = grid;
  p.tissue = build_tissue_map(grid, IntervalRegion{{{0.75, 1.75}}}, 1.0, 0.001);
  p.rho = 1.0;
  p.control = SpaceTimeField(FieldRole::control, grid);
  p.control.values().setConstant(0.2);
  p.initial_state = Eigen::VectorXd(grid.num_cells());
  for (int i = 0; i < grid.num_cells(); ++i) {
    const double x = grid.cell_center(i)[0];
    p.initial_state[i] = std::exp(-8.0 * (x - 2.5) * (x - 2.5));
  }
  return p;
}

ForwardProblem problem_2d(const Grid& grid) {
  ForwardProblem p;
  p.grid = grid;
  EllipseRegion region;
  region.center = {2.5, 2.5};
  region.semi_axes = {1.0, 0.5};
  p.tissue = build_tissue_map(grid, region, 1.0, 0.001);
  p.rho = 1.0;
  p.control = SpaceTimeField(FieldRole::control, grid);
  p.control.values().setConstant(0.2);
  p.initial_state = Eigen::VectorXd(grid.num_cells());
  for (int i = 0; i < grid.num_cells(); ++i) {
    const auto c = grid.cell_center(i);
    const double r2 = (c[0] - 2.5) * (c[0] - 2.5) + (c[1] - 2.5) * (c[1] - 2.5);
    p.initial_state[i] = std::exp(-5.0 * r2);
  }
  return p;
}

void bm_forward_1d(benchmark::State& state) {
  Grid grid = grid_1d(static_cast<int>(state.range(0)), 500);
  ForwardProblem p = problem_1d(grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_forward(p, SolverConfig{}));
  }
}
BENCHMARK(bm_forward_1d)->Arg(100)->Arg(400);

void bm_forward_2d(benchmark::State& state) {
  Grid grid = grid_2d(static_cast<int>(state.range(0)), 100);
  ForwardProblem p = problem_2d(grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_forward(p, SolverConfig{}));
  }
}
BENCHMARK(bm_forward_2d)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void bm_adjoint_1d(benchmark::State& state) {
  Grid grid = grid_1d(static_cast<int>(state.range(0)), 500);
  ForwardProblem p = problem_1d(grid);
  SpaceTimeField u = solve_forward(p, SolverConfig{});
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        solve_adjoint(u, p.control, p.rho, grid, p.tissue, SolverConfig{}));
  }
}
BENCHMARK(bm_adjoint_1d)->Arg(100)->Arg(400);

void bm_gradient_step(benchmark::State& state) {
  // One forward + adjoint + direction evaluation, the unit of work per
  // optimizer iteration.
  Grid grid = grid_1d(100, 500);
  ForwardProblem p = problem_1d(grid);
  for (auto _ : state) {
    SpaceTimeField u = solve_forward(p, SolverConfig{});
    SpaceTimeField phi = solve_adjoint(u, p.control, p.rho, grid, p.tissue, SolverConfig{});
    benchmark::DoNotOptimize(
        gradient_field(u, phi, p.control, 100.0, 0.5, ControlShape::distributed));
  }
}
BENCHMARK(bm_gradient_step);

void bm_bathtub(benchmark::State& state) {
  Grid grid = grid_1d(static_cast<int>(state.range(0)), 500);
  SpaceTimeField g(FieldRole::gradient, grid);
  Rng rng(7);
  for (int n = 0; n < grid.num_time_nodes(); ++n) {
    for (int i = 0; i < grid.num_cells(); ++i) g(i, n) = rng.uniform(-1.0, 0.0);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(bathtub_reconstruct(g, 0.5, 1.0, grid));
  }
}
BENCHMARK(bm_bathtub)->Arg(100)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
