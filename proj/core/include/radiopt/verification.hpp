#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "radiopt/solvers.hpp"

namespace radiopt {

/// Closed-form solution of the spatially uniform logistic reduction
/// u' = a u (1 - u):  u0 e^{at} / (1 - u0 + u0 e^{at}).
double logistic_exact(double u0, double a, double t);

struct EntropyReport {
  double clip = 1e-12;
  std::vector<double> per_time;       // int (|ln u| + |ln(1-u)|) dx per node
  std::vector<bool> clipped_at_time;  // any cell clipped at this node
  bool any_clipped = false;
};

/// Per-time entropy integrals, with u and 1-u clipped at `clip` before
/// taking logs. Finite values certify the state stays inside (0,1) in an
/// integral sense.
EntropyReport entropy_diagnostic(const SpaceTimeField& state, double clip = 1e-12);

struct InvarianceSuiteConfig {
  GridConfig grid{1, {5.0, 1.0}, {64, 1}, 200, 0.5};
  int num_seeds = 20;
  std::uint64_t base_seed = 1;
  double rho = 1.0;
  double control_max = 1.0;
  double range_tolerance = 1e-10;
  double mass_tolerance = 1e-9;  // relative drift for the R = rho cases
};

struct SuiteCaseRecord {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string metric;
  double value = 0.0;
  bool pass = true;
};

struct InvarianceSuiteReport {
  std::vector<SuiteCaseRecord> records;
  double worst_range_violation = 0.0;
  double worst_mass_drift = 0.0;
  bool all_passed = true;
};

/// Randomized forward solves (u0 in [0,1], R in [0, control_max]): asserts
/// nonnegativity and the [0,1] range, plus mass conservation for R = rho.
InvarianceSuiteReport run_invariance_suite(const InvarianceSuiteConfig& config,
                                           const SolverConfig& solver_config = {});

struct ConvergenceLevel {
  double h = 0.0;
  double dt = 0.0;
  double error = 0.0;  // L2 error at final time vs the manufactured solution
};

struct ConvergenceStudyConfig {
  std::vector<int> temporal_steps{20, 40, 80};
  int temporal_cells = 256;
  std::vector<int> spatial_cells{16, 32, 64};
  int spatial_steps = 8192;
  double length = 1.0;
  double final_time = 0.5;
  double diffusion = 1.0;
  double rho = 1.0;
  double temporal_order_target = 1.0;
  double spatial_order_target = 2.0;
  double order_band = 0.2;
};

struct ConvergenceStudy {
  std::vector<ConvergenceLevel> temporal_levels;
  std::vector<ConvergenceLevel> spatial_levels;
  double temporal_order = 0.0;
  double spatial_order = 0.0;
  bool passed = false;
};

/// Manufactured-solution refinement study with
/// u_m(x,t) = (1 + cos(pi x / L) e^{-t}) / 2 and the matching forcing term.
ConvergenceStudy mms_convergence(const ConvergenceStudyConfig& config,
                                 const SolverConfig& solver_config = {});

struct SensitivityFdReport {
  double epsilon = 0.0;
  double relative_difference = 0.0;  // L2 over space-time
  bool pass = false;
};

/// Compares solve_sensitivity against the two-solve finite difference
/// (u_{R+eps*perturbation} - u_R) / eps.
SensitivityFdReport sensitivity_vs_fd(const ForwardProblem& problem,
                                      const SpaceTimeField& perturbation, double epsilon,
                                      const SolverConfig& solver_config = {},
                                      double pass_threshold = 1e-3);

}  // namespace radiopt
