#include "radiopt/runner.hpp"

#include <chrono>
#include <filesystem>

#include "radiopt/checksum.hpp"
#include "radiopt/csv.hpp"

namespace radiopt {

namespace {

using nlohmann::json;

class OutputWriter {
 public:
  explicit OutputWriter(std::string dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  void add(const std::string& name, const std::string& contents, RunManifest& manifest) {
    const std::string path = dir_ + "/" + name;
    write_file(path, contents);
    manifest.files.push_back({name, to_hex(fnv1a64(contents))});
  }

  void add_field(const std::string& name, const SpaceTimeField& field, RunManifest& manifest) {
    const std::string path = dir_ + "/" + name;
    write_field_csv(path, field);
    manifest.files.push_back({name, to_hex(fnv1a64(read_file(path)))});
  }

  const std::string& dir() const { return dir_; }

 private:
  std::string dir_;
};

json manifest_to_json(const RunManifest& manifest) {
  json j;
  j["config"] = manifest.config_echo;
  j["version"] = manifest.version;
  j["wall_seconds"] = manifest.wall_seconds;
  j["success"] = manifest.success;
  auto& files = j["files"] = json::array();
  for (const auto& file : manifest.files) {
    files.push_back({{"name", file.name}, {"checksum", file.checksum}});
  }
  return j;
}

}  // namespace

RunManifest run(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();

  RunManifest manifest;
  manifest.config_echo = to_json(config);
  manifest.version = kArtifactVersion;
  OutputWriter writer(config.output_dir);

  const Grid grid = build_grid(config.grid);
  const TissueMap tissue = build_tissue_map(grid, config.tissue.white_region,
                                            config.tissue.d_white, config.tissue.d_grey);

  if (config.mode == RunMode::verify) {
    InvarianceSuiteConfig suite;
    suite.grid = config.grid;
    suite.num_seeds = config.verify_num_seeds;
    suite.base_seed = config.seed;
    suite.rho = config.control.rho;
    suite.control_max = config.control.upper_bound;
    const InvarianceSuiteReport report = run_invariance_suite(suite, config.solver);

    json out;
    out["all_passed"] = report.all_passed;
    out["worst_range_violation"] = report.worst_range_violation;
    out["worst_mass_drift"] = report.worst_mass_drift;
    auto& records = out["records"] = json::array();
    for (const auto& record : report.records) {
      records.push_back({{"config_hash", record.config_hash},
                         {"seed", record.seed},
                         {"metric", record.metric},
                         {"value", record.value},
                         {"pass", record.pass}});
    }
    writer.add("verify_report.json", out.dump(2) + "\n", manifest);
    manifest.success = report.all_passed;
  } else {
    ForwardProblem problem;
    problem.grid = grid;
    problem.tissue = tissue;
    problem.rho = config.control.rho;
    problem.initial_state = build_initial_state(config, grid);
    problem.control = build_initial_control(config, grid, tissue);

    json summary;
    summary["mode"] = to_string(config.mode);

    if (config.mode == RunMode::forward) {
      const SpaceTimeField state = solve_forward(problem, config.solver);
      writer.add_field("state.csv", state, manifest);
      summary["objective"] = objective(state);
    } else if (config.mode == RunMode::adjoint) {
      const SpaceTimeField state = solve_forward(problem, config.solver);
      const SpaceTimeField adjoint =
          solve_adjoint(state, problem.control, problem.rho, grid, tissue, config.solver);
      writer.add_field("state.csv", state, manifest);
      writer.add_field("adjoint.csv", adjoint, manifest);
      summary["objective"] = objective(state);
    } else {
      const OptimizationResult result =
          optimize(problem, config.control, config.optimizer, config.solver);
      writer.add_field("control.csv", result.control, manifest);
      writer.add_field("state.csv", result.state, manifest);
      write_series_csv(writer.dir() + "/objective_history.csv", "accepted_iterate,objective",
                       result.objective_history);
      manifest.files.push_back(
          {"objective_history.csv",
           to_hex(fnv1a64(read_file(writer.dir() + "/objective_history.csv")))});

      summary["objective_history"] = result.objective_history;
      summary["final_objective"] = result.objective_history.back();
      summary["constraint_residual"] = result.constraint_residual;
      summary["bang_bang_fraction"] = result.bang_bang_fraction;
      summary["accepted_steps"] = result.accepted_steps;
      summary["iterations_used"] = result.iterations_used;
      if (result.polished) {
        writer.add_field("polish_control.csv", result.polish_control, manifest);
        summary["polish_objective"] = result.polish_objective;
        summary["polish_improves"] =
            result.polish_objective < result.objective_history.back();
      }
    }
    writer.add("summary.json", summary.dump(2) + "\n", manifest);
  }

  manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_file(writer.dir() + "/manifest.json", manifest_to_json(manifest).dump(2) + "\n");
  return manifest;
}

}  // namespace radiopt
