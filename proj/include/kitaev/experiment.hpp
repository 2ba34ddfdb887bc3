#pragma once

#include <string>

#include "kitaev/config.hpp"

namespace kitaev {

// Exit codes used by the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;

Lattice lattice_from_config(const ExperimentConfig& cfg);
GaugeConfig gauge_from_config(const ExperimentConfig& cfg, const Lattice& lattice);

// Runs the configured experiment, writing the CSV and a manifest beside it.
// With oracle_only set, only the exact-diagonalization reference columns are
// produced. Throws config_error for invalid configs and std::runtime_error
// for numerical failures.
void run_experiment(const ExperimentConfig& cfg, bool oracle_only = false);

}  // namespace kitaev
