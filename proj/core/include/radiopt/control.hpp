#pragma once

#include "radiopt/field.hpp"
#include "radiopt/grid.hpp"

namespace radiopt {

enum class ControlShape { uniform_in_space, distributed };

struct ControlSpec {
  ControlShape shape = ControlShape::uniform_in_space;
  double upper_bound = 1.0;  // M
  double budget = 1.0;       // Gamma
  double penalty = 0.0;      // lambda
  double rho = 1.0;
};

/// Checks M > 0, lambda >= 0, rho > 0 and the feasibility bound
/// 0 < Gamma/M <= |Omega| T.
void validate(const ControlSpec& spec, const Grid& grid);

/// Tumor burden: integral of the state over space-time, with the left-node
/// step rule in time (the quadrature under which the adjoint gradient below
/// is the exact discrete gradient).
double objective(const SpaceTimeField& state);

/// Integral of a control field over space-time (left-node step rule, the
/// exact integral of a piecewise-constant control).
double budget_integral(const SpaceTimeField& control);

/// objective(state) + (lambda/2) (budget_integral(control) - gamma)^2.
double augmented_objective(const SpaceTimeField& state, const SpaceTimeField& control,
                           double lambda, double gamma);

/// Descent direction for the augmented objective (ascent direction of -J~),
/// stored at the left node of each step so that the candidate update is
/// R + step * direction.
///
/// distributed:       Phi u (1-u) - lambda (int R - Gamma), with Phi and u
///                    taken at the node each step lands on;
/// uniform_in_space:  the first term replaced by its spatial integral and
///                    the penalty term scaled by |Omega| (the exact gradient
///                    restricted to space-constant variations), broadcast
///                    over cells.
SpaceTimeField gradient_field(const SpaceTimeField& state, const SpaceTimeField& adjoint,
                              const SpaceTimeField& control, double lambda, double gamma,
                              ControlShape shape);

/// Weight g = Phi u (u - 1) of the necessary optimality condition, indexed
/// like a control field (value at node n pairs with the control on step n).
SpaceTimeField dose_weight_field(const SpaceTimeField& state, const SpaceTimeField& adjoint);

}  // namespace radiopt
