#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kitaev/hamiltonians.hpp"
#include "kitaev/lattice.hpp"
#include "kitaev/vqe.hpp"

namespace kitaev {

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat key-value experiment description; see README for the grammar.
struct ExperimentConfig {
  std::string experiment;  // fixed-gauge-sweep | dynamical-field-sweep |
                           // vortex-splitting | single-run
  LatticeKind lattice_kind = LatticeKind::honeycomb;
  int L1 = 2;
  int L2 = 2;
  Couplings couplings;
  std::array<double, 3> field_direction{1.0, 1.0, 1.0};

  std::vector<double> sweep_kappa;
  bool tie_kappa_int = false;
  std::vector<double> sweep_kappa_int;  // extra interacting rows (splitting runs)
  std::vector<double> sweep_h0;

  std::optional<std::pair<int, int>> vortex_pair;
  bool vortices_default = false;

  std::string mode = "fixed-gauge";  // single-run only
  OptimizerConfig optimizer;
  std::string output = "result.csv";
  std::string trace_path;

  // Raw lines for the manifest echo.
  std::vector<std::string> raw_lines;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Static checks; returns one diagnostic per problem (empty = valid).
std::vector<std::string> validate(const ExperimentConfig& cfg);

}  // namespace kitaev
