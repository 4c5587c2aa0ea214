// Acceptance gate: one line per criterion, exit 0 iff all pass.
//
// usage: acceptance_tests <configs_dir> <cli_path> <output_dir>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <radiopt/bathtub.hpp>
#include <radiopt/control.hpp>
#include <radiopt/csv.hpp>
#include <radiopt/solvers.hpp>
#include <radiopt/verification.hpp>

using namespace radiopt;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << index << " (" << name
            << "): " << detail << "\n";
  if (!pass) ++g_failures;
}

double elapsed_seconds(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Grid grid_1d(int cells, int steps, double length = 5.0, double T = 0.5) {
  GridConfig cfg;
  cfg.dim = 1;
  cfg.lengths = {length, 1.0};
  cfg.cells = {cells, 1};
  cfg.num_time_steps = steps;
  cfg.final_time = T;
  return build_grid(cfg);
}

ForwardProblem uniform_problem(const Grid& grid, double u0, double r) {
  ForwardProblem p;
  p.grid = grid;
  p.tissue = build_tissue_map(grid, IntervalRegion{{{0.0, grid.length(0)}}}, 1.0, 1.0);
  p.rho = 1.0;
  p.control = SpaceTimeField(FieldRole::control, grid);
  p.control.values().setConstant(r);
  p.initial_state = Eigen::VectorXd::Constant(grid.num_cells(), u0);
  return p;
}

ForwardProblem coarse_heterogeneous_problem(const Grid& grid, std::uint64_t seed) {
  ForwardProblem p;
  p.grid = grid;
  p.tissue = build_tissue_map(grid, IntervalRegion{{{0.75, 1.75}}}, 1.0, 0.001);
  p.rho = 1.0;
  p.control = SpaceTimeField(FieldRole::control, grid);
  p.initial_state = Eigen::VectorXd(grid.num_cells());
  Rng rng(seed);
  for (int i = 0; i < grid.num_cells(); ++i) p.initial_state[i] = rng.uniform(0.1, 0.9);
  for (int n = 0; n < grid.num_time_nodes(); ++n) {
    for (int i = 0; i < grid.num_cells(); ++i) p.control(i, n) = rng.uniform(0.1, 0.9);
  }
  return p;
}

int run_cli(const std::string& cli, const fs::path& config, const fs::path& out_dir) {
  const std::string command =
      "\"" + cli + "\" --config \"" + config.string() + "\" --output-dir \"" +
      out_dir.string() + "\" > /dev/null 2>&1";
  return std::system(command.c_str());
}

// values[row][node] for the node columns of a field CSV (coordinate columns
// skipped).
std::vector<std::vector<double>> read_field_rows(const fs::path& path, int coord_columns) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string token;
    int column = 0;
    while (std::getline(ss, token, ',')) {
      if (column++ >= coord_columns) row.push_back(std::stod(token));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

bool same_bytes(const fs::path& a, const fs::path& b) {
  return read_file(a.string()) == read_file(b.string());
}

struct TimeProfileChecks {
  bool initial_high = false;   // >= 0.9 M on a contiguous interval from t=0
  bool tail_low = false;       // <= 0.1 M on the final 20% of steps
  double tail_max = 0.0;
};

TimeProfileChecks check_time_profile(const std::vector<std::vector<double>>& rows,
                                     double upper_bound) {
  const int num_steps = static_cast<int>(rows.front().size()) - 1;
  const int tail_start = num_steps - num_steps / 5;
  TimeProfileChecks checks;
  // Contiguous prefix of steps where the (spatially uniform) control is high.
  int prefix = 0;
  while (prefix < num_steps && rows[0][prefix] >= 0.9 * upper_bound) ++prefix;
  checks.initial_high = prefix > 0;
  for (const auto& row : rows) {
    for (int n = tail_start; n < num_steps; ++n) {
      checks.tail_max = std::max(checks.tail_max, row[n]);
    }
  }
  checks.tail_low = checks.tail_max <= 0.1 * upper_bound;
  return checks;
}

std::string num(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: acceptance_tests <configs_dir> <cli_path> <output_dir>\n";
    return 2;
  }
  const fs::path configs_dir = argv[1];
  const std::string cli = argv[2];
  const fs::path out_dir = argv[3];
  fs::create_directories(out_dir);

  const SolverConfig solver;

  // 1. Forward solver against the logistic closed form.
  {
    const auto start = std::chrono::steady_clock::now();
    Grid grid = grid_1d(16, 500);
    ForwardProblem p = uniform_problem(grid, 0.5, 0.0);  // a = rho - R = 1
    SpaceTimeField u = solve_forward(p, solver);
    const double exact = logistic_exact(0.5, 1.0, 0.5);
    const double rel = std::abs(u(0, grid.num_time_steps()) - exact) / exact;
    const double seconds = elapsed_seconds(start);
    report(1, "logistic oracle", rel <= 1e-3 && seconds < 1.0,
           "relative error " + num(rel) + ", " + num(seconds) + " s");
  }

  // 2 + 3. Randomized range invariance and mass conservation.
  {
    InvarianceSuiteConfig cfg;  // 20 seeds, 64 cells, 200 steps, rho = 1
    InvarianceSuiteReport suite = run_invariance_suite(cfg, solver);
    report(2, "range invariance", suite.worst_range_violation <= 1e-10,
           "worst violation " + num(suite.worst_range_violation) + " over " +
               std::to_string(cfg.num_seeds) + " seeds");
    report(3, "mass conservation", suite.worst_mass_drift <= 1e-9,
           "worst relative drift " + num(suite.worst_mass_drift));
  }

  // 4. Adjoint: exact constant-coefficient profile, then gradient vs central
  //    finite differences.
  {
    Grid grid = grid_1d(16, 40);
    ForwardProblem p = uniform_problem(grid, 0.5, 1.0);  // b = 0
    SpaceTimeField u = solve_forward(p, solver);
    SpaceTimeField phi = solve_adjoint(u, p.control, p.rho, grid, p.tissue, solver);
    double profile_error = 0.0;
    for (int n = 0; n < grid.num_time_nodes(); ++n) {
      const double expected = grid.final_time() - grid.time_node(n);
      profile_error = std::max(
          profile_error, (phi.values().col(n).array() - expected).abs().maxCoeff());
    }

    Grid fd_grid = grid_1d(32, 50);
    ForwardProblem fd_problem = coarse_heterogeneous_problem(fd_grid, 17);
    const double lambda = 100.0, gamma = 0.5;
    SpaceTimeField state = solve_forward(fd_problem, solver);
    SpaceTimeField adjoint =
        solve_adjoint(state, fd_problem.control, fd_problem.rho, fd_grid,
                      fd_problem.tissue, solver);
    SpaceTimeField direction = gradient_field(state, adjoint, fd_problem.control, lambda,
                                              gamma, ControlShape::distributed);
    Rng rng(23);
    SpaceTimeField v(FieldRole::control, fd_grid);
    for (int n = 0; n < fd_grid.num_time_nodes(); ++n) {
      for (int i = 0; i < fd_grid.num_cells(); ++i) v(i, n) = rng.uniform(-1.0, 1.0);
    }
    const double eps = 1e-5;
    auto evaluate = [&](double sign) {
      ForwardProblem shifted = fd_problem;
      shifted.control.values() += sign * eps * v.values();
      SpaceTimeField shifted_state = solve_forward(shifted, solver);
      return augmented_objective(shifted_state, shifted.control, lambda, gamma);
    };
    const double fd = (evaluate(1.0) - evaluate(-1.0)) / (2 * eps);
    SpaceTimeField prod(FieldRole::gradient, fd_grid,
                        v.values().cwiseProduct(direction.values()));
    const double predicted = -integrate_steps(prod);
    const double rel = std::abs(fd - predicted) / std::abs(fd);

    // The constant-coefficient profile is exact in exact arithmetic; the
    // sparse factorization leaves a few ulps.
    report(4, "adjoint correctness", profile_error <= 1e-13 && rel <= 1e-4,
           "constant-case error " + num(profile_error) + ", gradient FD relative error " +
               num(rel));
  }

  // 5. Sensitivity against the two-solve finite difference.
  {
    Grid grid = grid_1d(32, 40);
    ForwardProblem p = coarse_heterogeneous_problem(grid, 19);
    Rng rng(21);
    SpaceTimeField v(FieldRole::control, grid);
    for (int n = 0; n < grid.num_time_nodes(); ++n) {
      for (int i = 0; i < grid.num_cells(); ++i) v(i, n) = rng.uniform(-1.0, 1.0);
    }
    SensitivityFdReport fd = sensitivity_vs_fd(p, v, 1e-4, solver);
    report(5, "sensitivity", fd.pass,
           "relative L2 difference " + num(fd.relative_difference) + " at eps 1e-4");
  }

  // 6. Manufactured-solution convergence orders.
  {
    const auto start = std::chrono::steady_clock::now();
    ConvergenceStudy study = mms_convergence(ConvergenceStudyConfig{}, solver);
    const double seconds = elapsed_seconds(start);
    report(6, "MMS convergence", study.passed && seconds < 60.0,
           "temporal order " + num(study.temporal_order) + ", spatial order " +
               num(study.spatial_order) + ", " + num(seconds) + " s");
  }

  // 7. 1D uniform-control reproduction via the CLI.
  {
    const fs::path run_dir = out_dir / "paper_1d_uniform";
    const int exit_code = run_cli(cli, configs_dir / "paper_1d_uniform.json", run_dir);
    bool pass = exit_code == 0;
    std::string detail = "exit code " + std::to_string(exit_code);
    if (pass) {
      std::ifstream summary_in((run_dir / "summary.json").string());
      nlohmann::json summary = nlohmann::json::parse(summary_in);
      const auto history = summary["objective_history"].get<std::vector<double>>();
      bool monotone = true;
      for (std::size_t k = 1; k < history.size(); ++k) {
        monotone = monotone && history[k] <= history[k - 1];
      }
      const double gamma = 0.5;
      const double residual = std::abs(summary["constraint_residual"].get<double>());
      const auto rows = read_field_rows(run_dir / "control.csv", 1);
      const TimeProfileChecks profile = check_time_profile(rows, 1.0);
      pass = monotone && residual <= 0.05 * gamma && profile.initial_high &&
             profile.tail_low;
      detail = std::string("history ") + (monotone ? "nonincreasing" : "NOT monotone") +
               ", |residual| " + num(residual) + ", initial-interval high " +
               (profile.initial_high ? "yes" : "no") + ", tail max " +
               num(profile.tail_max);
    }
    report(7, "1D uniform reproduction", pass, detail);
  }

  // 8. Bathtub reconstruction: enumerated oracle plus sampled optimality on a
  //    run's dose-weight field.
  {
    GridConfig atom_cfg;
    atom_cfg.dim = 1;
    atom_cfg.lengths = {4.0, 1.0};
    atom_cfg.cells = {4, 1};
    atom_cfg.num_time_steps = 1;
    atom_cfg.final_time = 1.0;
    Grid atoms = build_grid(atom_cfg);
    SpaceTimeField g4(FieldRole::gradient, atoms);
    g4(0, 0) = -0.4;
    g4(1, 0) = -0.3;
    g4(2, 0) = -0.2;
    g4(3, 0) = -0.1;

    BathtubResult no_plateau = bathtub_reconstruct(g4, 2.0, 1.0, atoms);
    const bool oracle_a = no_plateau.level == -0.2 && no_plateau.strict_measure == 2.0 &&
                          no_plateau.control(0, 0) == 1.0 && no_plateau.control(1, 0) == 1.0 &&
                          no_plateau.control(2, 0) == 0.0 && no_plateau.control(3, 0) == 0.0;
    BathtubResult plateau = bathtub_reconstruct(g4, 2.5, 1.0, atoms);
    const bool oracle_b = plateau.level == -0.2 && plateau.strict_measure == 2.0 &&
                          plateau.plateau_measure == 1.0 &&
                          std::abs(plateau.plateau_coefficient - 0.5) <= 1e-12 &&
                          std::abs(plateau.control(2, 0) - 0.5) <= 1e-12;

    Grid grid = grid_1d(32, 40);
    ForwardProblem p = coarse_heterogeneous_problem(grid, 33);
    SpaceTimeField u = solve_forward(p, solver);
    SpaceTimeField phi = solve_adjoint(u, p.control, p.rho, grid, p.tissue, solver);
    SpaceTimeField g = dose_weight_field(u, phi);
    const double gamma = 0.5, M = 1.0;
    BathtubResult best = bathtub_reconstruct(g, gamma, M, grid);
    const double budget_error = std::abs(integrate_steps(best.control) - gamma);
    NecessaryConditionReport nc = necessary_condition_check(best.control, g, gamma, M,
                                                            1000, 42);
    const bool sampled = nc.max_violation <= 1e-10 && budget_error <= 1e-12;
    report(8, "bathtub", oracle_a && oracle_b && sampled,
           std::string("4-atom oracles ") + (oracle_a && oracle_b ? "exact" : "WRONG") +
               ", sampled margin " + num(-nc.max_violation) + " over " +
               std::to_string(nc.samples) + " samples, budget error " + num(budget_error));
  }

  // 9. Determinism of a shipped config, byte for byte.
  {
    const fs::path run_a = out_dir / "determinism_a";
    const fs::path run_b = out_dir / "determinism_b";
    const fs::path config = configs_dir / "paper_1d_distributed_g05.json";
    const int code_a = run_cli(cli, config, run_a);
    const int code_b = run_cli(cli, config, run_b);
    bool pass = code_a == 0 && code_b == 0;
    std::string mismatch;
    if (pass) {
      for (const char* name :
           {"state.csv", "control.csv", "objective_history.csv", "summary.json"}) {
        if (!same_bytes(run_a / name, run_b / name)) {
          pass = false;
          mismatch += std::string(" ") + name;
        }
      }
    }
    report(9, "determinism", pass,
           pass ? "repeated run byte-identical" : "differs:" + mismatch);
  }

  // 10. 2D qualitative reproduction.
  {
    const auto start = std::chrono::steady_clock::now();
    const fs::path run_dir = out_dir / "paper_2d";
    const int exit_code = run_cli(cli, configs_dir / "paper_2d.json", run_dir);
    const double seconds = elapsed_seconds(start);
    bool pass = exit_code == 0 && seconds < 600.0;
    std::string detail = "exit code " + std::to_string(exit_code) + ", " + num(seconds) + " s";
    if (pass) {
      const auto rows = read_field_rows(run_dir / "control.csv", 2);
      const int num_steps = static_cast<int>(rows.front().size()) - 1;
      const int tail_start = num_steps - num_steps / 5;
      const double T = 0.5;
      const double dt = T / num_steps;
      double tail_max = 0.0;
      double early_max = 0.0;
      for (const auto& row : rows) {
        for (int n = 0; n < num_steps; ++n) {
          if (n >= tail_start) tail_max = std::max(tail_max, row[n]);
          if (n * dt < 0.3) early_max = std::max(early_max, row[n]);
        }
      }
      pass = tail_max <= 0.1 && early_max >= 0.9;
      detail += ", early max " + num(early_max) + ", tail max " + num(tail_max);
    }
    report(10, "2D qualitative reproduction", pass, detail);
  }

  std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " +
                                                              std::to_string(g_failures))
            << "\n";
  return g_failures == 0 ? 0 : 1;
}
