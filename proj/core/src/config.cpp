#include "radiopt/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "radiopt/csv.hpp"

namespace radiopt {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path) {
  throw ConfigError("missing or invalid field: " + path);
}

std::string join(const std::string& parent, const char* key) {
  return parent.empty() ? key : parent + "." + key;
}

const json& require_node(const json& j, const char* key, const std::string& parent) {
  const auto it = j.find(key);
  if (it == j.end()) fail(join(parent, key));
  return *it;
}

template <typename T>
T require(const json& j, const char* key, const std::string& parent) {
  try {
    return require_node(j, key, parent).get<T>();
  } catch (const json::exception&) {
    fail(join(parent, key));
  }
}

template <typename T>
T value_or(const json& j, const char* key, const std::string& parent, T fallback) {
  if (!j.contains(key)) return fallback;
  return require<T>(j, key, parent);
}

RunMode parse_mode(const std::string& text) {
  if (text == "forward") return RunMode::forward;
  if (text == "adjoint") return RunMode::adjoint;
  if (text == "optimize") return RunMode::optimize;
  if (text == "verify") return RunMode::verify;
  throw ConfigError("unknown mode: " + text);
}

GridConfig parse_grid(const json& j) {
  GridConfig grid;
  grid.dim = require<int>(j, "dim", "grid");
  const auto lengths = require<std::vector<double>>(j, "lengths", "grid");
  const auto cells = require<std::vector<int>>(j, "cells", "grid");
  if (static_cast<int>(lengths.size()) != grid.dim) fail("grid.lengths");
  if (static_cast<int>(cells.size()) != grid.dim) fail("grid.cells");
  for (int axis = 0; axis < grid.dim && axis < 2; ++axis) {
    grid.lengths[axis] = lengths[axis];
    grid.cells[axis] = cells[axis];
  }
  grid.num_time_steps = require<int>(j, "num_time_steps", "grid");
  grid.final_time = require<double>(j, "final_time", "grid");
  return grid;
}

RegionSpec parse_region(const json& j) {
  const std::string type = require<std::string>(j, "type", "tissue.white_region");
  if (type == "intervals") {
    IntervalRegion region;
    const auto raw =
        require<std::vector<std::vector<double>>>(j, "intervals", "tissue.white_region");
    for (const auto& pair : raw) {
      if (pair.size() != 2 || pair[0] > pair[1]) fail("tissue.white_region.intervals");
      region.intervals.emplace_back(pair[0], pair[1]);
    }
    return region;
  }
  if (type == "ellipse") {
    EllipseRegion region;
    const auto center = require<std::vector<double>>(j, "center", "tissue.white_region");
    const auto axes = require<std::vector<double>>(j, "semi_axes", "tissue.white_region");
    if (center.size() != 2) fail("tissue.white_region.center");
    if (axes.size() != 2 || axes[0] <= 0.0 || axes[1] <= 0.0) {
      fail("tissue.white_region.semi_axes");
    }
    region.center = {center[0], center[1]};
    region.semi_axes = {axes[0], axes[1]};
    return region;
  }
  if (type == "labels") {
    LabelRegion region;
    region.white = require<std::vector<bool>>(j, "white", "tissue.white_region");
    return region;
  }
  throw ConfigError("unknown tissue.white_region.type: " + type);
}

ControlShape parse_shape(const std::string& text) {
  if (text == "uniform_in_space") return ControlShape::uniform_in_space;
  if (text == "distributed") return ControlShape::distributed;
  throw ConfigError("unknown control.shape: " + text);
}

InitialStateSpec parse_initial_state(const json& j) {
  InitialStateSpec spec;
  const std::string type = require<std::string>(j, "type", "initial_state");
  if (type == "gaussian") {
    spec.type = InitialStateSpec::Type::gaussian;
    const auto center = require<std::vector<double>>(j, "center", "initial_state");
    if (center.empty() || center.size() > 2) fail("initial_state.center");
    spec.center[0] = center[0];
    if (center.size() == 2) spec.center[1] = center[1];
    spec.sharpness = require<double>(j, "sharpness", "initial_state");
    if (spec.sharpness <= 0.0) fail("initial_state.sharpness");
  } else if (type == "constant") {
    spec.type = InitialStateSpec::Type::constant;
    spec.value = require<double>(j, "value", "initial_state");
  } else if (type == "file") {
    spec.type = InitialStateSpec::Type::file;
    spec.path = require<std::string>(j, "path", "initial_state");
    if (!std::filesystem::exists(spec.path)) {
      throw ConfigError("initial_state.path does not exist: " + spec.path);
    }
  } else {
    throw ConfigError("unknown initial_state.type: " + type);
  }
  return spec;
}

InitialControlSpec parse_initial_control(const json& j) {
  InitialControlSpec spec;
  const std::string type = require<std::string>(j, "type", "initial_control");
  if (type == "constant") {
    spec.type = InitialControlSpec::Type::constant;
    spec.value = require<double>(j, "value", "initial_control");
  } else if (type == "piecewise") {
    spec.type = InitialControlSpec::Type::piecewise;
    const auto& raw = require_node(j, "breakpoints", "initial_control");
    if (!raw.is_array() || raw.empty()) fail("initial_control.breakpoints");
    double previous = -std::numeric_limits<double>::infinity();
    for (const auto& entry : raw) {
      const double t = require<double>(entry, "t", "initial_control.breakpoints");
      const double value = require<double>(entry, "value", "initial_control.breakpoints");
      if (t < previous) fail("initial_control.breakpoints");
      previous = t;
      spec.breakpoints.emplace_back(t, value);
    }
  } else if (type == "white_region_budget") {
    spec.type = InitialControlSpec::Type::white_region_budget;
  } else if (type == "file") {
    spec.type = InitialControlSpec::Type::file;
    spec.path = require<std::string>(j, "path", "initial_control");
    if (!std::filesystem::exists(spec.path)) {
      throw ConfigError("initial_control.path does not exist: " + spec.path);
    }
  } else {
    throw ConfigError("unknown initial_control.type: " + type);
  }
  return spec;
}

}  // namespace

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::forward: return "forward";
    case RunMode::adjoint: return "adjoint";
    case RunMode::optimize: return "optimize";
    case RunMode::verify: return "verify";
  }
  return "unknown";
}

RunConfig parse_config_json(const json& j) {
  RunConfig config;
  config.mode = parse_mode(require<std::string>(j, "mode", ""));
  config.grid = parse_grid(require_node(j, "grid", ""));

  const json& tissue = require_node(j, "tissue", "");
  config.tissue.d_white = require<double>(tissue, "d_white", "tissue");
  config.tissue.d_grey = require<double>(tissue, "d_grey", "tissue");
  config.tissue.white_region = parse_region(require_node(tissue, "white_region", "tissue"));

  const json& control = require_node(j, "control", "");
  config.control.shape = parse_shape(require<std::string>(control, "shape", "control"));
  config.control.upper_bound = require<double>(control, "upper_bound", "control");
  config.control.budget = require<double>(control, "budget", "control");
  config.control.penalty = require<double>(control, "penalty", "control");
  config.control.rho = require<double>(control, "rho", "control");

  if (j.contains("solver")) {
    const json& solver = j["solver"];
    config.solver.newton_tolerance =
        value_or(solver, "newton_tolerance", "solver", config.solver.newton_tolerance);
    config.solver.newton_max_iterations = value_or(solver, "newton_max_iterations", "solver",
                                                   config.solver.newton_max_iterations);
    config.solver.linear_solver_tolerance = value_or(
        solver, "linear_solver_tolerance", "solver", config.solver.linear_solver_tolerance);
  }
  if (j.contains("optimizer")) {
    const json& optimizer = j["optimizer"];
    config.optimizer.initial_step =
        value_or(optimizer, "initial_step", "optimizer", config.optimizer.initial_step);
    config.optimizer.max_iterations =
        value_or(optimizer, "max_iterations", "optimizer", config.optimizer.max_iterations);
    config.optimizer.step_growth =
        value_or(optimizer, "step_growth", "optimizer", config.optimizer.step_growth);
    config.optimizer.step_shrink =
        value_or(optimizer, "step_shrink", "optimizer", config.optimizer.step_shrink);
    config.optimizer.stop_tolerance =
        value_or(optimizer, "stop_tolerance", "optimizer", config.optimizer.stop_tolerance);
    config.optimizer.polish = value_or(optimizer, "polish", "optimizer", config.optimizer.polish);
  }

  if (config.mode != RunMode::verify) {
    config.initial_state = parse_initial_state(require_node(j, "initial_state", ""));
    config.initial_control = parse_initial_control(require_node(j, "initial_control", ""));
  }
  if (j.contains("verify")) {
    config.verify_num_seeds = require<int>(j["verify"], "num_seeds", "verify");
    if (config.verify_num_seeds < 1) fail("verify.num_seeds");
  }

  config.output_dir = value_or<std::string>(j, "output_dir", "", "out");
  config.seed = value_or<std::uint64_t>(j, "seed", "", 1);

  // Eager validation: grid arithmetic, positivity, and the budget
  // feasibility bound.
  const Grid grid = build_grid(config.grid);
  if (config.tissue.d_white <= 0.0) fail("tissue.d_white");
  if (config.tissue.d_grey <= 0.0) fail("tissue.d_grey");
  build_tissue_map(grid, config.tissue.white_region, config.tissue.d_white,
                   config.tissue.d_grey);
  validate(config.control, grid);
  validate(config.solver);
  validate(config.optimizer);
  return config;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& err) {
    throw ConfigError("config is not valid JSON: " + std::string(err.what()));
  }
  return parse_config_json(j);
}

json to_json(const RunConfig& config) {
  json j;
  j["mode"] = to_string(config.mode);
  j["grid"] = {
      {"dim", config.grid.dim},
      {"lengths", std::vector<double>(config.grid.lengths.begin(),
                                      config.grid.lengths.begin() + config.grid.dim)},
      {"cells", std::vector<int>(config.grid.cells.begin(),
                                 config.grid.cells.begin() + config.grid.dim)},
      {"num_time_steps", config.grid.num_time_steps},
      {"final_time", config.grid.final_time},
  };

  json region;
  if (const auto* intervals = std::get_if<IntervalRegion>(&config.tissue.white_region)) {
    region["type"] = "intervals";
    auto& list = region["intervals"] = json::array();
    for (const auto& [lo, hi] : intervals->intervals) list.push_back({lo, hi});
  } else if (const auto* ellipse = std::get_if<EllipseRegion>(&config.tissue.white_region)) {
    region["type"] = "ellipse";
    region["center"] = {ellipse->center[0], ellipse->center[1]};
    region["semi_axes"] = {ellipse->semi_axes[0], ellipse->semi_axes[1]};
  } else {
    const auto& labels = std::get<LabelRegion>(config.tissue.white_region);
    region["type"] = "labels";
    region["white"] = labels.white;
  }
  j["tissue"] = {{"d_white", config.tissue.d_white},
                 {"d_grey", config.tissue.d_grey},
                 {"white_region", region}};

  j["control"] = {
      {"shape", config.control.shape == ControlShape::uniform_in_space ? "uniform_in_space"
                                                                       : "distributed"},
      {"upper_bound", config.control.upper_bound},
      {"budget", config.control.budget},
      {"penalty", config.control.penalty},
      {"rho", config.control.rho},
  };
  j["solver"] = {
      {"newton_tolerance", config.solver.newton_tolerance},
      {"newton_max_iterations", config.solver.newton_max_iterations},
      {"linear_solver_tolerance", config.solver.linear_solver_tolerance},
  };
  j["optimizer"] = {
      {"initial_step", config.optimizer.initial_step},
      {"max_iterations", config.optimizer.max_iterations},
      {"step_growth", config.optimizer.step_growth},
      {"step_shrink", config.optimizer.step_shrink},
      {"stop_tolerance", config.optimizer.stop_tolerance},
      {"polish", config.optimizer.polish},
  };

  if (config.mode != RunMode::verify) {
    json state;
    switch (config.initial_state.type) {
      case InitialStateSpec::Type::gaussian:
        state["type"] = "gaussian";
        state["center"] = std::vector<double>(
            config.initial_state.center.begin(),
            config.initial_state.center.begin() + config.grid.dim);
        state["sharpness"] = config.initial_state.sharpness;
        break;
      case InitialStateSpec::Type::constant:
        state["type"] = "constant";
        state["value"] = config.initial_state.value;
        break;
      case InitialStateSpec::Type::file:
        state["type"] = "file";
        state["path"] = config.initial_state.path;
        break;
    }
    j["initial_state"] = state;

    json ctrl;
    switch (config.initial_control.type) {
      case InitialControlSpec::Type::constant:
        ctrl["type"] = "constant";
        ctrl["value"] = config.initial_control.value;
        break;
      case InitialControlSpec::Type::piecewise: {
        ctrl["type"] = "piecewise";
        auto& list = ctrl["breakpoints"] = json::array();
        for (const auto& [t, value] : config.initial_control.breakpoints) {
          list.push_back({{"t", t}, {"value", value}});
        }
        break;
      }
      case InitialControlSpec::Type::white_region_budget:
        ctrl["type"] = "white_region_budget";
        break;
      case InitialControlSpec::Type::file:
        ctrl["type"] = "file";
        ctrl["path"] = config.initial_control.path;
        break;
    }
    j["initial_control"] = ctrl;
  }

  j["verify"] = {{"num_seeds", config.verify_num_seeds}};
  j["output_dir"] = config.output_dir;
  j["seed"] = config.seed;
  return j;
}

Eigen::VectorXd build_initial_state(const RunConfig& config, const Grid& grid) {
  Eigen::VectorXd u0(grid.num_cells());
  switch (config.initial_state.type) {
    case InitialStateSpec::Type::gaussian:
      for (int cell = 0; cell < grid.num_cells(); ++cell) {
        const auto center = grid.cell_center(cell);
        double r2 = 0.0;
        for (int axis = 0; axis < grid.dim(); ++axis) {
          const double d = center[axis] - config.initial_state.center[axis];
          r2 += d * d;
        }
        u0[cell] = std::exp(-config.initial_state.sharpness * r2);
      }
      break;
    case InitialStateSpec::Type::constant:
      u0.setConstant(config.initial_state.value);
      break;
    case InitialStateSpec::Type::file: {
      const Eigen::MatrixXd values = read_matrix_csv(config.initial_state.path);
      if (values.rows() != grid.num_cells() || values.cols() != 1) {
        throw ConfigError("initial_state file shape does not match grid");
      }
      u0 = values.col(0);
      break;
    }
  }
  return u0;
}

SpaceTimeField build_initial_control(const RunConfig& config, const Grid& grid,
                                     const TissueMap& tissue) {
  SpaceTimeField control(FieldRole::control, grid);
  const auto& spec = config.initial_control;
  switch (spec.type) {
    case InitialControlSpec::Type::constant:
      control.values().setConstant(spec.value);
      break;
    case InitialControlSpec::Type::piecewise:
      for (int n = 0; n < grid.num_time_nodes(); ++n) {
        const double t = grid.time_node(n);
        double value = spec.breakpoints.front().second;
        for (const auto& [bp_t, bp_value] : spec.breakpoints) {
          if (bp_t <= t) value = bp_value;
        }
        control.values().col(n).setConstant(value);
      }
      break;
    case InitialControlSpec::Type::white_region_budget: {
      if (config.control.shape == ControlShape::uniform_in_space) {
        throw ConfigError(
            "initial_control.white_region_budget requires a distributed control shape");
      }
      const double white = tissue.white_measure(grid);
      if (white <= 0.0) throw ConfigError("white_region_budget requires a nonempty white region");
      const double value = config.control.budget / (white * grid.final_time());
      for (int cell = 0; cell < grid.num_cells(); ++cell) {
        if (tissue.is_white(cell)) control.values().row(cell).setConstant(value);
      }
      break;
    }
    case InitialControlSpec::Type::file: {
      const Eigen::MatrixXd values = read_matrix_csv(spec.path);
      if (values.rows() != grid.num_cells() || values.cols() != grid.num_time_nodes()) {
        throw ConfigError("initial_control file shape does not match grid");
      }
      control.values() = values;
      break;
    }
  }
  if (control.values().minCoeff() < 0.0 ||
      control.values().maxCoeff() > config.control.upper_bound) {
    throw ConfigError("initial control must lie in [0, control.upper_bound]");
  }
  return control;
}

}  // namespace radiopt
