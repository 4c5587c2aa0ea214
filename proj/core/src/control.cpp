#include "radiopt/control.hpp"

#include <string>

namespace radiopt {

void validate(const ControlSpec& spec, const Grid& grid) {
  if (spec.upper_bound <= 0.0) throw ConfigError("control.upper_bound must be positive");
  if (spec.penalty < 0.0) throw ConfigError("control.penalty must be nonnegative");
  if (spec.rho <= 0.0) throw ConfigError("control.rho must be positive");
  const double ratio = spec.budget / spec.upper_bound;
  const double capacity = grid.domain_measure() * grid.final_time();
  if (ratio <= 0.0 || ratio > capacity) {
    throw ConfigError("infeasible control budget: Gamma/M = " + std::to_string(ratio) +
                      " must lie in (0, |Omega| T] = (0, " + std::to_string(capacity) + "]");
  }
}

double objective(const SpaceTimeField& state) { return integrate_steps(state); }

double budget_integral(const SpaceTimeField& control) { return integrate_steps(control); }

double augmented_objective(const SpaceTimeField& state, const SpaceTimeField& control,
                           double lambda, double gamma) {
  const double residual = budget_integral(control) - gamma;
  return objective(state) + 0.5 * lambda * residual * residual;
}

SpaceTimeField gradient_field(const SpaceTimeField& state, const SpaceTimeField& adjoint,
                              const SpaceTimeField& control, double lambda, double gamma,
                              ControlShape shape) {
  const Grid& grid = state.grid();
  if (!(adjoint.grid() == grid) || !(control.grid() == grid)) {
    throw ConfigError("gradient inputs must share one grid");
  }
  if (shape == ControlShape::uniform_in_space) {
    for (int n = 0; n < grid.num_time_nodes(); ++n) {
      const auto col = control.values().col(n);
      if (col.maxCoeff() != col.minCoeff()) {
        throw ConfigError("uniform_in_space gradient requested for a spatially varying control");
      }
    }
  }
  const double penalty_force = lambda * (budget_integral(control) - gamma);

  SpaceTimeField direction(FieldRole::gradient, grid);
  for (int n = 0; n < grid.num_time_steps(); ++n) {
    // Step n pairs with the state/adjoint at the node it lands on.
    const Eigen::ArrayXd u = state.at_node(n + 1).array();
    const Eigen::ArrayXd phi = adjoint.at_node(n + 1).array();
    const Eigen::VectorXd response = phi * u * (1.0 - u);
    if (shape == ControlShape::distributed) {
      direction.values().col(n) = response.array() - penalty_force;
    } else {
      // Space-uniform controls see the budget through the whole domain, so
      // the penalty term carries the domain measure; this keeps the stored
      // value an exact (scaled) gradient of the augmented objective.
      const double value =
          integrate_space(grid, response) - penalty_force * grid.domain_measure();
      direction.values().col(n).setConstant(value);
    }
  }
  direction.values().col(grid.num_time_steps()) = direction.values().col(grid.num_time_steps() - 1);
  return direction;
}

SpaceTimeField dose_weight_field(const SpaceTimeField& state, const SpaceTimeField& adjoint) {
  const Grid& grid = state.grid();
  if (!(adjoint.grid() == grid)) throw ConfigError("dose weight inputs must share one grid");
  SpaceTimeField weight(FieldRole::gradient, grid);
  for (int n = 0; n < grid.num_time_steps(); ++n) {
    const Eigen::ArrayXd u = state.at_node(n + 1).array();
    const Eigen::ArrayXd phi = adjoint.at_node(n + 1).array();
    weight.values().col(n) = phi * u * (u - 1.0);
  }
  weight.values().col(grid.num_time_steps()) = weight.values().col(grid.num_time_steps() - 1);
  return weight;
}

}  // namespace radiopt
