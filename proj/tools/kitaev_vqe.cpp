#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kitaev/experiment.hpp"

namespace {

int load_and_run(const std::string& path, bool oracle_only) {
  kitaev::ExperimentConfig cfg;
  try {
    cfg = kitaev::parse_config_file(path);
  } catch (const kitaev::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kitaev::kExitConfigError;
  }
  auto diags = kitaev::validate(cfg);
  if (!diags.empty()) {
    std::cerr << "config error:\n";
    for (const auto& d : diags) {
      std::cerr << "  " << d << "\n";
    }
    return kitaev::kExitConfigError;
  }
  try {
    kitaev::run_experiment(cfg, oracle_only);
  } catch (const kitaev::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kitaev::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kitaev::kExitNumericalError;
  }
  std::cout << "wrote " << cfg.output << "\n";
  return kitaev::kExitOk;
}

int validate_only(const std::string& path) {
  kitaev::ExperimentConfig cfg;
  try {
    cfg = kitaev::parse_config_file(path);
  } catch (const kitaev::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kitaev::kExitConfigError;
  }
  auto diags = kitaev::validate(cfg);
  if (diags.empty()) {
    std::cout << "ok\n";
    return kitaev::kExitOk;
  }
  for (const auto& d : diags) {
    std::cerr << d << "\n";
  }
  return kitaev::kExitConfigError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kitaev spin-model VQE simulator"};
  app.require_subcommand(1);

  std::string run_config, validate_config, oracle_config;
  CLI::App* run = app.add_subcommand("run", "run an experiment from a config file");
  run->add_option("config", run_config, "config file")->required();
  CLI::App* val = app.add_subcommand("validate", "validate a config file");
  val->add_option("config", validate_config, "config file")->required();
  CLI::App* oracle =
      app.add_subcommand("oracle", "exact-diagonalization reference pass only");
  oracle->add_option("config", oracle_config, "config file")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    return load_and_run(run_config, false);
  }
  if (val->parsed()) {
    return validate_only(validate_config);
  }
  return load_and_run(oracle_config, true);
}
