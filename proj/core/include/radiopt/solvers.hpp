#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "radiopt/diffusion.hpp"
#include "radiopt/field.hpp"
#include "radiopt/grid.hpp"
#include "radiopt/tissue.hpp"

namespace radiopt {

struct SolverConfig {
  double newton_tolerance = 1e-10;  // sup-norm of the nonlinear residual
  int newton_max_iterations = 50;
  double linear_solver_tolerance = 1e-12;
};

void validate(const SolverConfig& config);

struct SolverError : std::runtime_error {
  SolverError(const std::string& what, int time_index, double residual)
      : std::runtime_error(what), time_index(time_index), residual(residual) {}
  int time_index;
  double residual;
};

/// Optional manufactured-solution forcing, evaluated at (x, y, t). In 1D the
/// y argument is 0.
using SourceFn = std::function<double(double, double, double)>;

struct ForwardProblem {
  Grid grid;
  TissueMap tissue;
  double rho = 1.0;
  SpaceTimeField control;       // role control, left-node step convention
  Eigen::VectorXd initial_state;
  SourceFn source;              // empty in production runs
};

void validate(const ForwardProblem& problem);

/// One backward-Euler step of u_t - div(D grad u) = a u(1-u) with
/// a = rho - r_n, solved by Newton iteration:
///   u_next + dt A u_next - dt a u_next (1 - u_next) = u_n.
Eigen::VectorXd step_forward(const Eigen::VectorXd& u_n, const Eigen::VectorXd& r_n,
                             double dt, const DiffusionOperator& op, double rho,
                             const SolverConfig& config);

/// Forward state solve: u(.,0) = u0, each subsequent slice from the implicit
/// step above, with the step-n control taken from the left time node.
SpaceTimeField solve_forward(const ForwardProblem& problem, const SolverConfig& config);

/// Adjoint solve. The final-time condition is zero; stepping is backward
/// Euler on the time-reversed form with coefficient
/// b(x,t) = (rho - R)(1 - 2u) and unit source, then re-reversed. Under the
/// left-node control convention this is exactly the discrete adjoint of the
/// forward scheme paired with left-node time quadrature of the objective.
SpaceTimeField solve_adjoint(const SpaceTimeField& state, const SpaceTimeField& control,
                             double rho, const Grid& grid, const TissueMap& tissue,
                             const SolverConfig& config);

/// Linearized (sensitivity) solve: Psi(.,0) = 0 and
///   Psi_t - div(D grad Psi) - a(1-2u) Psi = -perturbation * u(1-u),
/// discretized so that Psi is the exact derivative of the discrete forward
/// map in the given control direction.
SpaceTimeField solve_sensitivity(const SpaceTimeField& state, const SpaceTimeField& control,
                                 const SpaceTimeField& perturbation, double rho,
                                 const Grid& grid, const TissueMap& tissue,
                                 const SolverConfig& config);

}  // namespace radiopt
