#include "radiopt/verification.hpp"

#include <algorithm>
#include <cmath>

#include "radiopt/checksum.hpp"
#include "radiopt/rng.hpp"

namespace radiopt {

namespace {

std::string hash_grid_config(const GridConfig& config) {
  std::uint64_t hash = fnv1a64(&config.dim, sizeof(config.dim));
  hash = fnv1a64(config.lengths.data(), sizeof(config.lengths), hash);
  hash = fnv1a64(config.cells.data(), sizeof(config.cells), hash);
  hash = fnv1a64(&config.num_time_steps, sizeof(config.num_time_steps), hash);
  hash = fnv1a64(&config.final_time, sizeof(config.final_time), hash);
  return to_hex(hash);
}

double l2_space_time(const Grid& grid, const Eigen::MatrixXd& values) {
  return std::sqrt(values.squaredNorm() * grid.cell_volume() * grid.dt());
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

double logistic_exact(double u0, double a, double t) {
  if (u0 == 0.0) return 0.0;
  if (u0 == 1.0) return 1.0;
  const double growth = std::exp(a * t);
  return u0 * growth / (1.0 - u0 + u0 * growth);
}

EntropyReport entropy_diagnostic(const SpaceTimeField& state, double clip) {
  const Grid& grid = state.grid();
  EntropyReport report;
  report.clip = clip;
  report.per_time.resize(grid.num_time_nodes());
  report.clipped_at_time.resize(grid.num_time_nodes());
  for (int n = 0; n < grid.num_time_nodes(); ++n) {
    double total = 0.0;
    bool clipped = false;
    for (int cell = 0; cell < grid.num_cells(); ++cell) {
      const double u = state(cell, n);
      double lower = u;
      double upper = 1.0 - u;
      if (lower < clip) {
        lower = clip;
        clipped = true;
      }
      if (upper < clip) {
        upper = clip;
        clipped = true;
      }
      total += std::abs(std::log(lower)) + std::abs(std::log(upper));
    }
    report.per_time[n] = total * grid.cell_volume();
    report.clipped_at_time[n] = clipped;
    report.any_clipped = report.any_clipped || clipped;
  }
  return report;
}

InvarianceSuiteReport run_invariance_suite(const InvarianceSuiteConfig& config,
                                           const SolverConfig& solver_config) {
  const Grid grid = build_grid(config.grid);
  const std::string config_hash = hash_grid_config(config.grid);
  // Homogeneous white tissue keeps the randomized cases focused on the
  // reaction term; the heterogeneous operator is covered by its own tests.
  const TissueMap tissue = build_tissue_map(
      grid, LabelRegion{std::vector<bool>(grid.num_cells(), true)}, 1.0, 1.0);

  InvarianceSuiteReport report;
  auto record = [&](std::uint64_t seed, const std::string& metric, double value, bool pass) {
    report.records.push_back({config_hash, seed, metric, value, pass});
    report.all_passed = report.all_passed && pass;
  };

  for (int i = 0; i < config.num_seeds; ++i) {
    const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(i);
    Rng rng(seed);

    ForwardProblem problem;
    problem.grid = grid;
    problem.tissue = tissue;
    problem.rho = config.rho;
    problem.control = SpaceTimeField(FieldRole::control, grid);
    problem.initial_state.resize(grid.num_cells());
    for (int cell = 0; cell < grid.num_cells(); ++cell) {
      problem.initial_state[cell] = rng.next_double();
    }
    for (int n = 0; n < grid.num_time_nodes(); ++n) {
      for (int cell = 0; cell < grid.num_cells(); ++cell) {
        problem.control(cell, n) = rng.uniform(0.0, config.control_max);
      }
    }

    const SpaceTimeField state = solve_forward(problem, solver_config);
    const double min_value = state.values().minCoeff();
    const double max_value = state.values().maxCoeff();
    const double range_violation = std::max(0.0 - min_value, max_value - 1.0);
    report.worst_range_violation = std::max(report.worst_range_violation, range_violation);
    record(seed, "range_violation", range_violation,
           range_violation <= config.range_tolerance);

    // Zero-reaction case: R = rho kills the reaction, so the Neumann operator
    // conserves mass up to the linear solve.
    ForwardProblem conserved = problem;
    conserved.control.values().setConstant(config.rho);
    const SpaceTimeField mass_state = solve_forward(conserved, solver_config);
    const double initial_mass = integrate_space(mass_state, 0);
    double worst_drift = 0.0;
    for (int n = 1; n < grid.num_time_nodes(); ++n) {
      worst_drift = std::max(worst_drift,
                             std::abs(integrate_space(mass_state, n) - initial_mass));
    }
    const double relative_drift =
        initial_mass > 0.0 ? worst_drift / initial_mass : worst_drift;
    report.worst_mass_drift = std::max(report.worst_mass_drift, relative_drift);
    record(seed, "mass_drift", relative_drift, relative_drift <= config.mass_tolerance);
  }
  return report;
}

ConvergenceStudy mms_convergence(const ConvergenceStudyConfig& config,
                                 const SolverConfig& solver_config) {
  const double L = config.length;
  const double D = config.diffusion;
  const double a = config.rho;  // zero control throughout the study
  const double k = M_PI / L;

  auto exact = [&](double x, double t) {
    return 0.5 * (1.0 + std::cos(k * x) * std::exp(-t));
  };
  auto source = [&](double x, double /*y*/, double t) {
    const double c = std::cos(k * x) * std::exp(-t);
    const double u = 0.5 * (1.0 + c);
    return -0.5 * c + 0.5 * D * k * k * c - a * u * (1.0 - u);
  };

  auto run_level = [&](int cells, int steps) {
    GridConfig grid_config;
    grid_config.dim = 1;
    grid_config.lengths = {L, 1.0};
    grid_config.cells = {cells, 1};
    grid_config.num_time_steps = steps;
    grid_config.final_time = config.final_time;
    const Grid grid = build_grid(grid_config);
    const TissueMap tissue =
        build_tissue_map(grid, IntervalRegion{{{0.0, L}}}, D, D);

    ForwardProblem problem;
    problem.grid = grid;
    problem.tissue = tissue;
    problem.rho = config.rho;
    problem.control = SpaceTimeField(FieldRole::control, grid);
    problem.source = source;
    problem.initial_state.resize(grid.num_cells());
    for (int cell = 0; cell < grid.num_cells(); ++cell) {
      problem.initial_state[cell] = exact(grid.cell_center(cell)[0], 0.0);
    }

    const SpaceTimeField state = solve_forward(problem, solver_config);
    double error_sq = 0.0;
    for (int cell = 0; cell < grid.num_cells(); ++cell) {
      const double diff =
          state(cell, grid.num_time_steps()) - exact(grid.cell_center(cell)[0], config.final_time);
      error_sq += diff * diff;
    }
    ConvergenceLevel level;
    level.h = grid.spacing(0);
    level.dt = grid.dt();
    level.error = std::sqrt(error_sq * grid.cell_volume());
    return level;
  };

  ConvergenceStudy study;
  std::vector<double> log_dt, log_err_t;
  for (int steps : config.temporal_steps) {
    const ConvergenceLevel level = run_level(config.temporal_cells, steps);
    study.temporal_levels.push_back(level);
    log_dt.push_back(std::log(level.dt));
    log_err_t.push_back(std::log(level.error));
  }
  study.temporal_order = least_squares_slope(log_dt, log_err_t);

  std::vector<double> log_h, log_err_x;
  for (int cells : config.spatial_cells) {
    const ConvergenceLevel level = run_level(cells, config.spatial_steps);
    study.spatial_levels.push_back(level);
    log_h.push_back(std::log(level.h));
    log_err_x.push_back(std::log(level.error));
  }
  study.spatial_order = least_squares_slope(log_h, log_err_x);

  study.passed =
      std::abs(study.temporal_order - config.temporal_order_target) <= config.order_band &&
      std::abs(study.spatial_order - config.spatial_order_target) <= config.order_band;
  return study;
}

SensitivityFdReport sensitivity_vs_fd(const ForwardProblem& problem,
                                      const SpaceTimeField& perturbation, double epsilon,
                                      const SolverConfig& solver_config,
                                      double pass_threshold) {
  if (epsilon <= 0.0 || epsilon > 1e-2) {
    throw ConfigError("sensitivity epsilon must lie in (0, 1e-2]");
  }
  const Grid& grid = problem.grid;
  const SpaceTimeField base_state = solve_forward(problem, solver_config);
  ForwardProblem shifted = problem;
  shifted.control.values() += epsilon * perturbation.values();
  const SpaceTimeField shifted_state = solve_forward(shifted, solver_config);

  const Eigen::MatrixXd fd =
      (shifted_state.values() - base_state.values()) / epsilon;
  const SpaceTimeField sensitivity = solve_sensitivity(
      base_state, problem.control, perturbation, problem.rho, grid, problem.tissue,
      solver_config);

  SensitivityFdReport report;
  report.epsilon = epsilon;
  const double fd_norm = l2_space_time(grid, fd);
  const double diff_norm = l2_space_time(grid, sensitivity.values() - fd);
  report.relative_difference = fd_norm > 0.0 ? diff_norm / fd_norm : diff_norm;
  report.pass = report.relative_difference <= pass_threshold;
  return report;
}

}  // namespace radiopt
