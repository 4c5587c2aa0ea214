#pragma once

#include <Eigen/Dense>

#include "radiopt/grid.hpp"

namespace radiopt {

enum class FieldRole { state, control, adjoint, sensitivity, gradient };

/// Scalar field sampled at (cell, time-node): values are num_cells x
/// (num_time_steps + 1). Control-role fields follow the piecewise-constant
/// convention: the value at node n applies on [t_n, t_{n+1}).
class SpaceTimeField {
 public:
  SpaceTimeField() = default;
  SpaceTimeField(FieldRole role, const Grid& grid)
      : role_(role),
        grid_(grid),
        values_(Eigen::MatrixXd::Zero(grid.num_cells(), grid.num_time_nodes())) {}
  SpaceTimeField(FieldRole role, const Grid& grid, Eigen::MatrixXd values);

  FieldRole role() const { return role_; }
  const Grid& grid() const { return grid_; }

  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::MatrixXd& values() { return values_; }

  double operator()(int cell, int node) const { return values_(cell, node); }
  double& operator()(int cell, int node) { return values_(cell, node); }

  Eigen::VectorXd at_node(int node) const { return values_.col(node); }
  void set_node(int node, const Eigen::VectorXd& v) { values_.col(node) = v; }

  bool all_finite() const { return values_.allFinite(); }

 private:
  FieldRole role_ = FieldRole::state;
  Grid grid_;
  Eigen::MatrixXd values_;
};

/// Space-time integral with cell-sum (midpoint) quadrature in space and the
/// trapezoid rule in time. Exact for fields constant in space and piecewise
/// linear in time.
double integrate(const SpaceTimeField& field);

/// Space-time integral with cell-sum quadrature in space and the left-node
/// step rule in time (value at node n weighted by dt, node N excluded).
/// This is the exact integral of a piecewise-constant control field and the
/// quadrature under which the discrete adjoint gradient is exact.
double integrate_steps(const SpaceTimeField& field);

/// Spatial integral of one time slice.
double integrate_space(const SpaceTimeField& field, int node);
double integrate_space(const Grid& grid, const Eigen::VectorXd& values);

SpaceTimeField clamp_field(const SpaceTimeField& field, double lo, double hi);

}  // namespace radiopt
