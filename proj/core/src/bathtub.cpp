#include "radiopt/bathtub.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace radiopt {

namespace {

double pair_steps(const SpaceTimeField& a, const SpaceTimeField& b) {
  const Grid& grid = a.grid();
  double total = 0.0;
  for (int n = 0; n < grid.num_time_steps(); ++n) {
    total += a.values().col(n).dot(b.values().col(n));
  }
  return total * grid.cell_volume() * grid.dt();
}

}  // namespace

BathtubResult bathtub_reconstruct(const SpaceTimeField& g, double gamma, double M,
                                  const Grid& grid) {
  if (!g.all_finite()) throw ConfigError("bathtub weight has non-finite entries");
  const double capacity = grid.domain_measure() * grid.final_time();
  const double target = gamma / M;  // measure to fill
  if (M <= 0.0 || target <= 0.0 || target > capacity * (1.0 + 1e-12)) {
    throw ConfigError("infeasible (Gamma, M): Gamma/M = " + std::to_string(target) +
                      " must lie in (0, " + std::to_string(capacity) + "]");
  }

  const int cells = grid.num_cells();
  const int steps = grid.num_time_steps();
  const double atom_measure = grid.cell_volume() * grid.dt();
  const int num_atoms = cells * steps;

  BathtubResult result;
  result.control = SpaceTimeField(FieldRole::control, grid);

  auto atom_value = [&](int atom) { return g(atom % cells, atom / cells); };

  if (target >= capacity * (1.0 - 1e-12)) {
    // W = |Omega| T: the budget fills the whole cylinder.
    result.level = std::numeric_limits<double>::infinity();
    result.strict_measure = capacity;
    result.plateau_measure = 0.0;
    result.plateau_coefficient = 0.0;
    result.strict_atoms.resize(num_atoms);
    std::iota(result.strict_atoms.begin(), result.strict_atoms.end(), 0);
    result.control.values().setConstant(M);
    return result;
  }

  std::vector<int> order(num_atoms);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return atom_value(a) < atom_value(b); });

  // Walk value groups (exact bit-equality ties) and keep the last level whose
  // strict sublevel measure still fits the budget.
  int group_begin = 0;
  int chosen_begin = 0;
  int chosen_end = 0;
  double chosen_prefix = 0.0;
  while (group_begin < num_atoms) {
    const double value = atom_value(order[group_begin]);
    int group_end = group_begin;
    while (group_end < num_atoms && atom_value(order[group_end]) == value) ++group_end;
    const double prefix = group_begin * atom_measure;
    if (prefix <= target) {
      result.level = value;
      chosen_begin = group_begin;
      chosen_end = group_end;
      chosen_prefix = prefix;
    } else {
      break;
    }
    group_begin = group_end;
  }

  result.strict_measure = chosen_prefix;
  result.plateau_measure = (chosen_end - chosen_begin) * atom_measure;
  result.plateau_coefficient = std::clamp(
      (target - result.strict_measure) / result.plateau_measure, 0.0, 1.0);

  result.strict_atoms.assign(order.begin(), order.begin() + chosen_begin);
  result.plateau_atoms.assign(order.begin() + chosen_begin, order.begin() + chosen_end);
  std::sort(result.strict_atoms.begin(), result.strict_atoms.end());
  std::sort(result.plateau_atoms.begin(), result.plateau_atoms.end());

  for (int atom : result.strict_atoms) {
    result.control(atom % cells, atom / cells) = M;
  }
  const double plateau_dose = result.plateau_coefficient * M;
  for (int atom : result.plateau_atoms) {
    result.control(atom % cells, atom / cells) = plateau_dose;
  }
  result.control.values().col(steps) = result.control.values().col(steps - 1);
  return result;
}

SpaceTimeField random_feasible_control(const Grid& grid, double gamma, double M, Rng& rng) {
  SpaceTimeField raw(FieldRole::control, grid);
  for (int n = 0; n < grid.num_time_steps(); ++n) {
    for (int cell = 0; cell < grid.num_cells(); ++cell) {
      raw(cell, n) = rng.uniform(0.0, M);
    }
  }

  auto budget_at = [&](double shift) {
    double total = 0.0;
    for (int n = 0; n < grid.num_time_steps(); ++n) {
      for (int cell = 0; cell < grid.num_cells(); ++cell) {
        total += std::clamp(raw(cell, n) + shift, 0.0, M);
      }
    }
    return total * grid.cell_volume() * grid.dt();
  };

  // budget_at is continuous and nondecreasing in the shift; bisect it to the
  // requested budget.
  double lo = -M;
  double hi = M;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (budget_at(mid) < gamma) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double shift = 0.5 * (lo + hi);

  SpaceTimeField control(FieldRole::control, grid);
  for (int n = 0; n < grid.num_time_steps(); ++n) {
    for (int cell = 0; cell < grid.num_cells(); ++cell) {
      control(cell, n) = std::clamp(raw(cell, n) + shift, 0.0, M);
    }
  }
  control.values().col(grid.num_time_steps()) =
      control.values().col(grid.num_time_steps() - 1);
  return control;
}

NecessaryConditionReport necessary_condition_check(const SpaceTimeField& candidate,
                                                   const SpaceTimeField& g, double gamma,
                                                   double M, int count, std::uint64_t seed) {
  const Grid& grid = g.grid();
  NecessaryConditionReport report;
  report.samples = count;
  report.candidate_value = pair_steps(candidate, g);
  report.max_violation = -std::numeric_limits<double>::infinity();

  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    const SpaceTimeField sample = random_feasible_control(grid, gamma, M, rng);
    const double sample_value = pair_steps(sample, g);
    const double violation = report.candidate_value - sample_value;
    if (violation > report.max_violation) {
      report.max_violation = violation;
      report.worst_sample_value = sample_value;
    }
  }
  return report;
}

}  // namespace radiopt
