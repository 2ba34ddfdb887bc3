#include "kitaev/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace kitaev {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) {
    return "";
  }
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& s, int line_no) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) {
      throw std::invalid_argument("");
    }
    return v;
  } catch (...) {
    throw config_error("line " + std::to_string(line_no) + ": expected a number, got '" +
                       s + "'");
  }
}

std::vector<double> parse_list(const std::string& value, int line_no) {
  std::string inner = trim(value);
  if (inner.size() < 2 || inner.front() != '[' || inner.back() != ']') {
    throw config_error("line " + std::to_string(line_no) + ": expected [a, b, ...]");
  }
  inner = inner.substr(1, inner.size() - 2);
  std::vector<double> out;
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) {
      out.push_back(parse_number(item, line_no));
    }
  }
  return out;
}

// Either "[v1, v2, ...]" or "start/stop/count" (inclusive linspace).
std::vector<double> parse_grid(const std::string& value, int line_no) {
  std::string v = trim(value);
  if (!v.empty() && v.front() == '[') {
    return parse_list(v, line_no);
  }
  std::vector<std::string> parts;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, '/')) {
    parts.push_back(trim(item));
  }
  if (parts.size() != 3) {
    throw config_error("line " + std::to_string(line_no) +
                       ": expected start/stop/count or [list]");
  }
  double start = parse_number(parts[0], line_no);
  double stop = parse_number(parts[1], line_no);
  double count_f = parse_number(parts[2], line_no);
  int count = static_cast<int>(count_f);
  if (count < 1 || count_f != count) {
    throw config_error("line " + std::to_string(line_no) + ": grid count must be >= 1");
  }
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
  }
  return out;
}

bool parse_bool(const std::string& v, int line_no) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw config_error("line " + std::to_string(line_no) + ": expected true/false, got '" +
                     v + "'");
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') {
      continue;
    }
    cfg.raw_lines.push_back(stripped);
    std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw config_error("line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw config_error("line " + std::to_string(line_no) + ": empty key or value");
    }

    if (key == "experiment") {
      cfg.experiment = value;
    } else if (key == "lattice.kind") {
      try {
        cfg.lattice_kind = lattice_kind_from_string(value);
      } catch (const std::exception& e) {
        throw config_error("line " + std::to_string(line_no) + ": " + e.what());
      }
    } else if (key == "lattice.L1") {
      cfg.L1 = static_cast<int>(parse_number(value, line_no));
    } else if (key == "lattice.L2") {
      cfg.L2 = static_cast<int>(parse_number(value, line_no));
    } else if (key == "couplings.J") {
      auto j = parse_list(value, line_no);
      if (j.size() != 3) {
        throw config_error("line " + std::to_string(line_no) + ": couplings.J needs 3 values");
      }
      cfg.couplings.J = {j[0], j[1], j[2]};
    } else if (key == "couplings.kappa") {
      cfg.couplings.kappa = parse_number(value, line_no);
    } else if (key == "couplings.kappa_int") {
      cfg.couplings.kappa_int = parse_number(value, line_no);
    } else if (key == "couplings.h") {
      auto h = parse_list(value, line_no);
      if (h.size() != 3) {
        throw config_error("line " + std::to_string(line_no) + ": couplings.h needs 3 values");
      }
      cfg.couplings.h = {h[0], h[1], h[2]};
    } else if (key == "field.direction") {
      auto d = parse_list(value, line_no);
      if (d.size() != 3) {
        throw config_error("line " + std::to_string(line_no) +
                           ": field.direction needs 3 values");
      }
      cfg.field_direction = {d[0], d[1], d[2]};
    } else if (key == "sweep.kappa") {
      cfg.sweep_kappa = parse_grid(value, line_no);
    } else if (key == "sweep.tie_kappa_int") {
      cfg.tie_kappa_int = parse_bool(value, line_no);
    } else if (key == "sweep.kappa_int") {
      cfg.sweep_kappa_int = parse_grid(value, line_no);
    } else if (key == "sweep.h0") {
      cfg.sweep_h0 = parse_grid(value, line_no);
    } else if (key == "vortices.pair") {
      auto p = parse_list(value, line_no);
      if (p.size() != 2) {
        throw config_error("line " + std::to_string(line_no) + ": vortices.pair needs 2 indices");
      }
      cfg.vortex_pair = {static_cast<int>(p[0]), static_cast<int>(p[1])};
    } else if (key == "vortices.separated") {
      cfg.vortices_default = parse_bool(value, line_no);
    } else if (key == "mode") {
      cfg.mode = value;
    } else if (key == "optimizer.max_evaluations") {
      cfg.optimizer.max_evaluations = static_cast<std::size_t>(parse_number(value, line_no));
    } else if (key == "optimizer.tolerance") {
      cfg.optimizer.tolerance = parse_number(value, line_no);
    } else if (key == "optimizer.fd_step") {
      cfg.optimizer.fd_step = parse_number(value, line_no);
    } else if (key == "optimizer.restarts") {
      cfg.optimizer.restarts = static_cast<int>(parse_number(value, line_no));
    } else if (key == "optimizer.seed") {
      cfg.optimizer.seed = static_cast<std::uint64_t>(parse_number(value, line_no));
    } else if (key == "optimizer.gradient") {
      cfg.optimizer.gradient = value;
    } else if (key == "output") {
      cfg.output = value;
    } else if (key == "trace") {
      cfg.trace_path = value;
    } else {
      throw config_error("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw config_error("cannot open config file: " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::vector<std::string> validate(const ExperimentConfig& cfg) {
  std::vector<std::string> diags;
  auto fail = [&](const std::string& field, const std::string& msg) {
    diags.push_back(field + ": " + msg);
  };

  const bool known_kind = cfg.experiment == "fixed-gauge-sweep" ||
                          cfg.experiment == "dynamical-field-sweep" ||
                          cfg.experiment == "vortex-splitting" ||
                          cfg.experiment == "single-run";
  if (!known_kind) {
    fail("experiment", "unknown experiment kind '" + cfg.experiment + "'");
    return diags;
  }

  if (cfg.L1 < 1 || cfg.L2 < 1) {
    fail("lattice", "dimensions must be positive");
  }
  if (cfg.lattice_kind == LatticeKind::honeycomb && cfg.L1 == 1 && cfg.L2 == 1) {
    fail("lattice", "honeycomb 1x1 is not supported");
  }
  const int n_spins = (cfg.lattice_kind == LatticeKind::honeycomb ? 2 : 4) * cfg.L1 * cfg.L2;
  const bool honeycomb_no_plaquettes =
      cfg.lattice_kind == LatticeKind::honeycomb && (cfg.L1 < 2 || cfg.L2 < 2);

  const bool fixed_like = cfg.experiment == "fixed-gauge-sweep" ||
                          cfg.experiment == "vortex-splitting" ||
                          (cfg.experiment == "single-run" && cfg.mode == "fixed-gauge");
  const bool dynamical_like = cfg.experiment == "dynamical-field-sweep" ||
                              (cfg.experiment == "single-run" && cfg.mode == "dynamical");

  if (fixed_like && cfg.couplings.has_field()) {
    fail("couplings.h", "a magnetic field mixes gauge sectors; fixed-gauge runs need h=0");
  }
  if (dynamical_like && n_spins > kProjectorSpinCap) {
    fail("lattice", "dynamical runs are capped at " + std::to_string(kProjectorSpinCap) +
                        " spins (projector expansion)");
  }
  if (dynamical_like && honeycomb_no_plaquettes) {
    fail("lattice", "honeycomb plaquette observables need L1, L2 >= 2");
  }
  if ((cfg.vortex_pair || cfg.vortices_default) && honeycomb_no_plaquettes) {
    fail("vortices", "honeycomb plaquettes need L1, L2 >= 2");
  }
  if (cfg.vortex_pair) {
    int n_plaq = cfg.lattice_kind == LatticeKind::honeycomb ? cfg.L1 * cfg.L2
                                                            : 2 * cfg.L1 * cfg.L2;
    auto [a, b] = *cfg.vortex_pair;
    if (a == b) {
      fail("vortices.pair", "needs two distinct plaquettes");
    }
    if (a < 0 || b < 0 || a >= n_plaq || b >= n_plaq) {
      fail("vortices.pair", "plaquette index out of range");
    }
  }

  auto check_grid = [&](const std::vector<double>& grid, const std::string& name,
                        bool required) {
    if (grid.empty()) {
      if (required) {
        fail(name, "sweep grid must be nonempty");
      }
      return;
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (grid[i] < grid[i - 1]) {
        fail(name, "sweep grid must be monotone nondecreasing");
        return;
      }
    }
  };
  check_grid(cfg.sweep_kappa, "sweep.kappa",
             cfg.experiment == "fixed-gauge-sweep" || cfg.experiment == "vortex-splitting");
  check_grid(cfg.sweep_h0, "sweep.h0", cfg.experiment == "dynamical-field-sweep");
  check_grid(cfg.sweep_kappa_int, "sweep.kappa_int", false);

  if (cfg.experiment == "single-run" && cfg.mode != "fixed-gauge" && cfg.mode != "dynamical") {
    fail("mode", "must be fixed-gauge or dynamical");
  }
  if (cfg.output.empty()) {
    fail("output", "output path must be set");
  }
  if (cfg.optimizer.tolerance <= 0) {
    fail("optimizer.tolerance", "must be positive");
  }
  if (cfg.optimizer.gradient != "adjoint" && cfg.optimizer.gradient != "finite-difference" &&
      cfg.optimizer.gradient != "shift-rule") {
    fail("optimizer.gradient", "must be adjoint, finite-difference or shift-rule");
  }
  return diags;
}

}  // namespace kitaev
