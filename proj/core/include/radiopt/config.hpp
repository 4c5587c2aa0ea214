#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "radiopt/control.hpp"
#include "radiopt/grid.hpp"
#include "radiopt/optimize.hpp"
#include "radiopt/solvers.hpp"
#include "radiopt/tissue.hpp"
#include "radiopt/verification.hpp"

namespace radiopt {

enum class RunMode { forward, adjoint, optimize, verify };

std::string to_string(RunMode mode);

struct TissueConfig {
  double d_white = 1.0;
  double d_grey = 1.0;
  RegionSpec white_region = IntervalRegion{};
};

struct InitialStateSpec {
  enum class Type { gaussian, constant, file };
  Type type = Type::constant;
  std::array<double, 2> center{0.0, 0.0};  // gaussian
  double sharpness = 1.0;                  // gaussian: exp(-sharpness * |x-c|^2)
  double value = 0.0;                      // constant
  std::string path;                        // file: one value per line
};

struct InitialControlSpec {
  enum class Type { constant, piecewise, white_region_budget, file };
  Type type = Type::constant;
  double value = 0.0;
  std::vector<std::pair<double, double>> breakpoints;  // piecewise (t, value)
  std::string path;  // file: headerless CSV, cells x nodes
};

struct RunConfig {
  RunMode mode = RunMode::forward;
  GridConfig grid;
  TissueConfig tissue;
  ControlSpec control;
  SolverConfig solver;
  OptimizerConfig optimizer;
  InitialStateSpec initial_state;
  InitialControlSpec initial_control;
  int verify_num_seeds = 20;
  std::string output_dir = "out";
  std::uint64_t seed = 1;
};

/// Parses and eagerly validates a config file; errors name the offending
/// field path.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_json(const nlohmann::json& json);
nlohmann::json to_json(const RunConfig& config);

Eigen::VectorXd build_initial_state(const RunConfig& config, const Grid& grid);
SpaceTimeField build_initial_control(const RunConfig& config, const Grid& grid,
                                     const TissueMap& tissue);

}  // namespace radiopt
