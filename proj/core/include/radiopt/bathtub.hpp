#pragma once

#include <cstdint>
#include <vector>

#include "radiopt/field.hpp"
#include "radiopt/grid.hpp"
#include "radiopt/rng.hpp"

namespace radiopt {

/// Closed-form minimizer of int R g over {0 <= R <= M, int R = Gamma}:
/// R* = M on the strict sublevel set E1 = {g < kappa*}, C M on the plateau
/// E2 = {g = kappa*}, 0 elsewhere, with C = (Gamma/M - |E1|) / |E2|.
struct BathtubResult {
  double level = 0.0;                 // kappa*
  double strict_measure = 0.0;        // |E1|
  double plateau_measure = 0.0;       // |E2|
  double plateau_coefficient = 0.0;   // C
  std::vector<int> strict_atoms;      // flat (cell + step * num_cells) indices in E1
  std::vector<int> plateau_atoms;     // indices in E2
  SpaceTimeField control;             // reconstructed R*
};

/// Atoms are (cell, step) pairs of measure cell_volume * dt; only the N step
/// columns of g participate (matching the piecewise-constant control
/// convention). Plateaus are grouped by exact bit equality of g values.
BathtubResult bathtub_reconstruct(const SpaceTimeField& g, double gamma, double M,
                                  const Grid& grid);

struct NecessaryConditionReport {
  int samples = 0;
  double candidate_value = 0.0;  // int R_candidate g
  double max_violation = 0.0;    // max over samples of candidate_value - int R g
  double worst_sample_value = 0.0;
};

/// Random control in [0, M] with budget Gamma: a uniform random field is
/// shifted by a constant and re-clamped, the shift found by bisection on the
/// budget.
SpaceTimeField random_feasible_control(const Grid& grid, double gamma, double M, Rng& rng);

/// Samples `count` random feasible controls and reports the worst violation
/// of int R_candidate g <= int R g.
NecessaryConditionReport necessary_condition_check(const SpaceTimeField& candidate,
                                                   const SpaceTimeField& g, double gamma,
                                                   double M, int count, std::uint64_t seed);

}  // namespace radiopt
