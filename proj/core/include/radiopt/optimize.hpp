#pragma once

#include <vector>

#include "radiopt/control.hpp"
#include "radiopt/solvers.hpp"

namespace radiopt {

struct OptimizerConfig {
  double initial_step = 1.0;      // Delta_0
  int max_iterations = 200;       // n
  double step_growth = 2.0;       // Delta *= growth on acceptance
  double step_shrink = 0.5;       // Delta *= shrink on rejection
  double stop_tolerance = 1e-6;   // relative J~ change over 10 accepted iterates
  bool polish = false;            // bathtub reconstruction after descent
};

void validate(const OptimizerConfig& config);

struct OptimizationResult {
  SpaceTimeField control;                 // final R*
  SpaceTimeField state;                   // state under R*
  std::vector<double> objective_history;  // accepted J~ values, J~(R0) first
  double constraint_residual = 0.0;       // int R* - Gamma
  double bang_bang_fraction = 0.0;        // share of entries within 1e-2 M of {0, M}
  int iterations_used = 0;
  int accepted_steps = 0;
  double wall_seconds = 0.0;
  // Polish step (when enabled): the bathtub reconstruction built from the
  // final iterate's dose weight, and its augmented objective for comparison
  // with objective_history.back().
  bool polished = false;
  SpaceTimeField polish_control;
  double polish_objective = 0.0;
};

/// Fraction of control entries (over the N step columns) within
/// tol * upper_bound of {0, upper_bound}.
double bang_bang_fraction(const SpaceTimeField& control, double upper_bound, double tol = 1e-2);

/// Projected gradient descent with multiplicative step control: candidate
/// R_c = clamp(R + Delta * direction, 0, M); accept iff the augmented
/// objective decreases, doubling Delta on acceptance and halving it on
/// rejection. The initial control is taken from problem.control and must lie
/// in [0, M].
OptimizationResult optimize(const ForwardProblem& problem, const ControlSpec& spec,
                            const OptimizerConfig& optimizer_config,
                            const SolverConfig& solver_config);

}  // namespace radiopt
