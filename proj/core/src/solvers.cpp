#include "radiopt/solvers.hpp"

#include <Eigen/SparseCholesky>

namespace radiopt {

void validate(const SolverConfig& config) {
  if (config.newton_tolerance <= 0.0) throw ConfigError("solver.newton_tolerance must be positive");
  if (config.newton_max_iterations < 1) throw ConfigError("solver.newton_max_iterations must be >= 1");
  if (config.linear_solver_tolerance <= 0.0) throw ConfigError("solver.linear_solver_tolerance must be positive");
}

void validate(const ForwardProblem& problem) {
  if (problem.rho <= 0.0) throw ConfigError("rho must be positive");
  if (problem.initial_state.size() != problem.grid.num_cells()) {
    throw ConfigError("initial state size does not match grid");
  }
  if (!problem.initial_state.allFinite()) throw ConfigError("initial state has non-finite entries");
  if (!problem.control.all_finite()) throw ConfigError("control has non-finite entries");
  if (!(problem.control.grid() == problem.grid)) throw ConfigError("control grid does not match problem grid");
}

namespace {

/// Repeated symmetric solves of (I + dt A - dt diag(c)) x = rhs with a fixed
/// sparsity pattern: symbolic factorization happens once, numeric
/// factorization per solve.
class ImplicitStepper {
 public:
  ImplicitStepper(const DiffusionOperator& op, double dt) {
    const int n = op.matrix().rows();
    Eigen::SparseMatrix<double> identity(n, n);
    identity.setIdentity();
    base_ = identity + dt * op.matrix();
    base_.makeCompressed();
    work_ = base_;
    ldlt_.analyzePattern(base_);
    dt_ = dt;
  }

  double dt() const { return dt_; }

  /// Solve (base - dt diag(c)) x = rhs.
  Eigen::VectorXd solve_linear(const Eigen::VectorXd& c, const Eigen::VectorXd& rhs,
                               int time_index) {
    work_ = base_;
    for (int i = 0; i < c.size(); ++i) {
      work_.coeffRef(i, i) -= dt_ * c[i];
    }
    ldlt_.factorize(work_);
    if (ldlt_.info() != Eigen::Success) {
      throw SolverError("linear factorization failed at time index " +
                            std::to_string(time_index),
                        time_index, 0.0);
    }
    return ldlt_.solve(rhs);
  }

  /// Newton solve of base*v - dt a v(1-v) = rhs, initial guess v0.
  Eigen::VectorXd solve_newton(const Eigen::VectorXd& v0, const Eigen::VectorXd& a,
                               const Eigen::VectorXd& rhs, const SolverConfig& config,
                               int time_index) {
    Eigen::VectorXd v = v0;
    double residual_norm = 0.0;
    for (int it = 0; it <= config.newton_max_iterations; ++it) {
      const Eigen::VectorXd reaction = a.array() * v.array() * (1.0 - v.array());
      const Eigen::VectorXd residual = base_ * v - dt_ * reaction - rhs;
      residual_norm = residual.lpNorm<Eigen::Infinity>();
      if (residual_norm < config.newton_tolerance) return v;
      if (it == config.newton_max_iterations) break;
      const Eigen::VectorXd jac_diag = a.array() * (1.0 - 2.0 * v.array());
      v -= solve_linear(jac_diag, residual, time_index);
    }
    throw SolverError("Newton iteration failed to converge at time index " +
                          std::to_string(time_index) + " (residual " +
                          std::to_string(residual_norm) + ")",
                      time_index, residual_norm);
  }

 private:
  double dt_;
  Eigen::SparseMatrix<double> base_;
  Eigen::SparseMatrix<double> work_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
};

Eigen::VectorXd source_at(const SourceFn& source, const Grid& grid, double t) {
  Eigen::VectorXd values(grid.num_cells());
  for (int cell = 0; cell < grid.num_cells(); ++cell) {
    const auto center = grid.cell_center(cell);
    values[cell] = source(center[0], center[1], t);
  }
  return values;
}

}  // namespace

Eigen::VectorXd step_forward(const Eigen::VectorXd& u_n, const Eigen::VectorXd& r_n,
                             double dt, const DiffusionOperator& op, double rho,
                             const SolverConfig& config) {
  ImplicitStepper stepper(op, dt);
  const Eigen::VectorXd a = Eigen::VectorXd::Constant(u_n.size(), rho) - r_n;
  return stepper.solve_newton(u_n, a, u_n, config, 0);
}

SpaceTimeField solve_forward(const ForwardProblem& problem, const SolverConfig& config) {
  validate(problem);
  validate(config);
  const Grid& grid = problem.grid;
  const double dt = grid.dt();
  const DiffusionOperator op = assemble_diffusion(grid, problem.tissue);
  ImplicitStepper stepper(op, dt);

  SpaceTimeField state(FieldRole::state, grid);
  state.set_node(0, problem.initial_state);
  Eigen::VectorXd u = problem.initial_state;
  for (int n = 0; n < grid.num_time_steps(); ++n) {
    const Eigen::VectorXd a =
        Eigen::VectorXd::Constant(grid.num_cells(), problem.rho) - problem.control.at_node(n);
    Eigen::VectorXd rhs = u;
    if (problem.source) {
      rhs += dt * source_at(problem.source, grid, grid.time_node(n + 1));
    }
    u = stepper.solve_newton(u, a, rhs, config, n + 1);
    state.set_node(n + 1, u);
  }
  return state;
}

SpaceTimeField solve_adjoint(const SpaceTimeField& state, const SpaceTimeField& control,
                             double rho, const Grid& grid, const TissueMap& tissue,
                             const SolverConfig& config) {
  validate(config);
  if (!(state.grid() == grid) || !(control.grid() == grid)) {
    throw ConfigError("adjoint inputs must share the problem grid");
  }
  const double dt = grid.dt();
  const DiffusionOperator op = assemble_diffusion(grid, tissue);
  ImplicitStepper stepper(op, dt);

  SpaceTimeField adjoint(FieldRole::adjoint, grid);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(grid.num_cells());
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(grid.num_cells());
  adjoint.set_node(grid.num_time_steps(), phi);
  for (int n = grid.num_time_steps() - 1; n >= 0; --n) {
    // Reaction coefficient at the target node: the control governing the
    // step that ends at node n (left-limit of the piecewise-constant R).
    const int control_step = n > 0 ? n - 1 : 0;
    const Eigen::VectorXd a =
        Eigen::VectorXd::Constant(grid.num_cells(), rho) - control.at_node(control_step);
    const Eigen::VectorXd b =
        a.array() * (1.0 - 2.0 * state.at_node(n).array());
    phi = stepper.solve_linear(b, phi + dt * ones, n);
    adjoint.set_node(n, phi);
  }
  return adjoint;
}

SpaceTimeField solve_sensitivity(const SpaceTimeField& state, const SpaceTimeField& control,
                                 const SpaceTimeField& perturbation, double rho,
                                 const Grid& grid, const TissueMap& tissue,
                                 const SolverConfig& config) {
  validate(config);
  if (!(state.grid() == grid) || !(control.grid() == grid) || !(perturbation.grid() == grid)) {
    throw ConfigError("sensitivity inputs must share the problem grid");
  }
  if (!perturbation.all_finite()) throw ConfigError("perturbation has non-finite entries");
  const double dt = grid.dt();
  const DiffusionOperator op = assemble_diffusion(grid, tissue);
  ImplicitStepper stepper(op, dt);

  SpaceTimeField sensitivity(FieldRole::sensitivity, grid);
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(grid.num_cells());
  for (int n = 0; n < grid.num_time_steps(); ++n) {
    const Eigen::VectorXd a =
        Eigen::VectorXd::Constant(grid.num_cells(), rho) - control.at_node(n);
    const Eigen::ArrayXd u_next = state.at_node(n + 1).array();
    const Eigen::VectorXd coeff = a.array() * (1.0 - 2.0 * u_next);
    const Eigen::VectorXd rhs =
        psi.array() - dt * perturbation.at_node(n).array() * u_next * (1.0 - u_next);
    psi = stepper.solve_linear(coeff, rhs, n + 1);
    sensitivity.set_node(n + 1, psi);
  }
  return sensitivity;
}

}  // namespace radiopt
