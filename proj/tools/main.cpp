#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "radiopt/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Radiotherapy scheduling for a reaction-diffusion tumor model: forward, "
      "adjoint, optimize, and verify runs driven by a JSON config."};

  std::string config_path;
  std::string mode_override;
  std::string output_dir_override;
  std::uint64_t seed_override = 0;
  bool seed_given = false;

  app.add_option("--config", config_path, "Path to a JSON run config")->required();
  app.add_option("--mode", mode_override,
                 "Override the config mode (forward|adjoint|optimize|verify)");
  app.add_option("--output-dir", output_dir_override, "Override the output directory");
  app.add_option("--seed", seed_override, "Override the run seed")
      ->each([&](const std::string&) { seed_given = true; });

  CLI11_PARSE(app, argc, argv);

  try {
    radiopt::RunConfig config = radiopt::parse_config(config_path);
    if (!mode_override.empty()) {
      if (mode_override == "forward") config.mode = radiopt::RunMode::forward;
      else if (mode_override == "adjoint") config.mode = radiopt::RunMode::adjoint;
      else if (mode_override == "optimize") config.mode = radiopt::RunMode::optimize;
      else if (mode_override == "verify") config.mode = radiopt::RunMode::verify;
      else throw radiopt::ConfigError("unknown mode: " + mode_override);
    }
    if (!output_dir_override.empty()) config.output_dir = output_dir_override;
    if (seed_given) config.seed = seed_override;

    const radiopt::RunManifest manifest = radiopt::run(config);
    std::cout << "mode=" << radiopt::to_string(config.mode)
              << " output_dir=" << config.output_dir
              << " files=" << manifest.files.size()
              << " wall_seconds=" << manifest.wall_seconds << "\n";
    if (!manifest.success) {
      std::cerr << "verification cases failed; see verify_report.json\n";
      return 1;
    }
    return 0;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
}
