#include "radiopt/optimize.hpp"

#include <chrono>
#include <cmath>

#include "radiopt/bathtub.hpp"

namespace radiopt {

void validate(const OptimizerConfig& config) {
  if (config.initial_step <= 0.0) throw ConfigError("optimizer.initial_step must be positive");
  if (config.max_iterations < 1) throw ConfigError("optimizer.max_iterations must be >= 1");
  if (config.step_growth <= 1.0) throw ConfigError("optimizer.step_growth must exceed 1");
  if (config.step_shrink <= 0.0 || config.step_shrink >= 1.0) {
    throw ConfigError("optimizer.step_shrink must lie in (0, 1)");
  }
  if (config.stop_tolerance < 0.0) throw ConfigError("optimizer.stop_tolerance must be nonnegative");
}

double bang_bang_fraction(const SpaceTimeField& control, double upper_bound, double tol) {
  const Grid& grid = control.grid();
  const double band = tol * upper_bound;
  int extreme = 0;
  int total = 0;
  for (int n = 0; n < grid.num_time_steps(); ++n) {
    for (int cell = 0; cell < grid.num_cells(); ++cell) {
      const double v = control(cell, n);
      if (v <= band || v >= upper_bound - band) ++extreme;
      ++total;
    }
  }
  return static_cast<double>(extreme) / total;
}

OptimizationResult optimize(const ForwardProblem& problem, const ControlSpec& spec,
                            const OptimizerConfig& optimizer_config,
                            const SolverConfig& solver_config) {
  validate(spec, problem.grid);
  validate(optimizer_config);
  validate(solver_config);
  const auto start = std::chrono::steady_clock::now();

  const double upper = spec.upper_bound;
  if (problem.control.values().minCoeff() < 0.0 ||
      problem.control.values().maxCoeff() > upper) {
    throw ConfigError("initial control guess must lie in [0, M]");
  }

  SpaceTimeField control = problem.control;
  SpaceTimeField state = solve_forward(problem, solver_config);
  double current = augmented_objective(state, control, spec.penalty, spec.budget);

  OptimizationResult result;
  result.objective_history.push_back(current);

  double step = optimizer_config.initial_step;
  bool direction_stale = true;
  SpaceTimeField direction;
  int iteration = 0;
  for (; iteration < optimizer_config.max_iterations; ++iteration) {
    if (direction_stale) {
      const SpaceTimeField adjoint =
          solve_adjoint(state, control, spec.rho, problem.grid, problem.tissue, solver_config);
      direction = gradient_field(state, adjoint, control, spec.penalty, spec.budget, spec.shape);
      direction_stale = false;
    }

    SpaceTimeField candidate = control;
    candidate.values() += step * direction.values();
    candidate = clamp_field(candidate, 0.0, upper);

    ForwardProblem trial = problem;
    trial.control = candidate;
    SpaceTimeField trial_state;
    try {
      trial_state = solve_forward(trial, solver_config);
    } catch (const SolverError& err) {
      throw SolverError("forward solve failed at optimizer iteration " +
                            std::to_string(iteration + 1) + ": " + err.what(),
                        err.time_index, err.residual);
    }
    const double trial_value =
        augmented_objective(trial_state, candidate, spec.penalty, spec.budget);

    if (trial_value < current) {
      control = std::move(candidate);
      state = std::move(trial_state);
      current = trial_value;
      result.objective_history.push_back(current);
      ++result.accepted_steps;
      step *= optimizer_config.step_growth;
      direction_stale = true;

      const auto& history = result.objective_history;
      if (history.size() > 10) {
        const double past = history[history.size() - 11];
        const double scale = std::abs(past) > 0.0 ? std::abs(past) : 1.0;
        if (std::abs(past - current) / scale < optimizer_config.stop_tolerance) {
          ++iteration;
          break;
        }
      }
    } else {
      step *= optimizer_config.step_shrink;
    }
  }

  result.control = std::move(control);
  result.state = std::move(state);

  if (optimizer_config.polish) {
    // Compare the iterate against the closed-form minimizer of the
    // linearized objective at the final state; reported, never substituted.
    const SpaceTimeField adjoint = solve_adjoint(result.state, result.control, spec.rho,
                                                 problem.grid, problem.tissue, solver_config);
    const SpaceTimeField g = dose_weight_field(result.state, adjoint);
    BathtubResult bathtub = bathtub_reconstruct(g, spec.budget, upper, problem.grid);
    ForwardProblem polished = problem;
    polished.control = bathtub.control;
    const SpaceTimeField polished_state = solve_forward(polished, solver_config);
    result.polished = true;
    result.polish_objective =
        augmented_objective(polished_state, bathtub.control, spec.penalty, spec.budget);
    result.polish_control = std::move(bathtub.control);
  }

  result.constraint_residual = budget_integral(result.control) - spec.budget;
  result.bang_bang_fraction = bang_bang_fraction(result.control, upper);
  result.iterations_used = iteration;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace radiopt
