#include "kitaev/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <stdexcept>

#include "kitaev/ansatz.hpp"
#include "kitaev/freefermion.hpp"
#include "kitaev/oracle.hpp"
#include "kitaev/statevector.hpp"

namespace kitaev {

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kDegenerateTol = 1e-9;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct CsvWriter {
  std::ofstream out;
  explicit CsvWriter(const std::string& path) : out(path) {
    if (!out) {
      throw std::runtime_error("cannot open output file: " + path);
    }
  }
  void header(const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      out << (i ? "," : "") << cols[i];
    }
    out << "\n";
    out.flush();
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << (i ? "," : "") << cells[i];
    }
    out << "\n";
    out.flush();
  }
};

void write_manifest(const ExperimentConfig& cfg) {
  std::ofstream out(cfg.output + ".manifest.txt");
  if (!out) {
    throw std::runtime_error("cannot open manifest file beside " + cfg.output);
  }
  out << "kitaev-vqe\t" << kVersion << "\n";
  out << "seed\t" << cfg.optimizer.seed << "\n";
  out << "threads\t" << worker_threads() << "\n";
  out << "config-begin\n";
  for (const auto& line : cfg.raw_lines) {
    out << line << "\n";
  }
  out << "config-end\n";
}

void check_variational_bound(double e_vqe, double e_exact) {
  if (e_vqe < e_exact - 1e-9) {
    throw std::runtime_error("variational bound violated: E_vqe=" + fmt17(e_vqe) +
                             " < E_exact=" + fmt17(e_exact));
  }
}

// Ground-multiplet data from dense ED: energy, eigenvectors within
// kDegenerateTol of the bottom.
struct GroundMultiplet {
  double energy = 0.0;
  std::vector<State> vectors;
};

GroundMultiplet ground_multiplet(const PauliSum& h, int k_hint) {
  SpectrumRequest req;
  req.op = h;
  req.k = std::min<int>(k_hint, 1 << h.n_qubits);
  req.mode = SpectrumMode::dense;
  auto pairs = lowest_eigenpairs(req);
  GroundMultiplet g;
  g.energy = pairs[0].value;
  for (auto& p : pairs) {
    if (p.value <= g.energy + kDegenerateTol) {
      g.vectors.push_back(std::move(p.vector));
    }
  }
  return g;
}

double multiplet_average(const GroundMultiplet& g, const PauliSum& op) {
  double acc = 0.0;
  for (const auto& v : g.vectors) {
    acc += expectation(op, v);
  }
  return acc / static_cast<double>(g.vectors.size());
}

double infidelity_vs_multiplet(const GroundMultiplet& g, const State& psi) {
  double overlap2 = 0.0;
  for (const auto& v : g.vectors) {
    overlap2 += std::norm(overlap(v, psi));
  }
  return 1.0 - overlap2;
}

OptimizerConfig point_optimizer(const ExperimentConfig& cfg, std::size_t point_index) {
  OptimizerConfig opt = cfg.optimizer;
  opt.seed = cfg.optimizer.seed + point_index;
  return opt;
}

void write_trace(const std::string& path,
                 const std::vector<std::pair<std::size_t, double>>& trace) {
  CsvWriter csv(path);
  csv.header({"evaluation", "cost"});
  for (const auto& [ev, cost] : trace) {
    csv.row({std::to_string(ev), fmt17(cost)});
  }
}

// Runs `points` jobs through a bounded worker window, emitting rows in grid
// order as soon as each prefix completes.
template <typename Job>
void ordered_parallel_rows(std::size_t n_points, CsvWriter& csv, Job job) {
  const std::size_t window = std::max<std::size_t>(1, worker_threads());
  std::vector<std::future<std::vector<std::string>>> futures(n_points);
  std::size_t launched = 0, written = 0;
  while (written < n_points) {
    while (launched < n_points && launched < written + window) {
      futures[launched] = std::async(std::launch::async, job, launched);
      ++launched;
    }
    csv.row(futures[written].get());
    ++written;
  }
}

// The plaquette maximally separated from p in the dual graph (BFS distance,
// lowest index among ties). Used as the default second vortex: well-separated
// vortices expose the hybridization splitting rather than direct overlap.
int default_far_plaquette(const Lattice& lattice, int p) {
  std::vector<std::vector<int>> edge_plaqs(lattice.n_edges());
  for (int q = 0; q < lattice.n_plaquettes(); ++q) {
    std::vector<int> count(lattice.n_edges(), 0);
    for (const auto& step : lattice.plaquettes[q].steps) {
      count[step.edge]++;
    }
    for (int e = 0; e < lattice.n_edges(); ++e) {
      if (count[e] % 2 == 1) {
        edge_plaqs[e].push_back(q);
      }
    }
  }
  std::vector<std::vector<int>> adj(lattice.n_plaquettes());
  for (int e = 0; e < lattice.n_edges(); ++e) {
    if (edge_plaqs[e].size() == 2 && edge_plaqs[e][0] != edge_plaqs[e][1]) {
      adj[edge_plaqs[e][0]].push_back(edge_plaqs[e][1]);
      adj[edge_plaqs[e][1]].push_back(edge_plaqs[e][0]);
    }
  }
  std::vector<int> dist(lattice.n_plaquettes(), -1);
  std::vector<int> queue{p};
  dist[p] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int cur = queue[head];
    for (int next : adj[cur]) {
      if (dist[next] < 0) {
        dist[next] = dist[cur] + 1;
        queue.push_back(next);
      }
    }
  }
  int best = -1;
  for (int q = 0; q < lattice.n_plaquettes(); ++q) {
    if (q != p && dist[q] >= 0 && (best < 0 || dist[q] > dist[best])) {
      best = q;
    }
  }
  if (best < 0) {
    throw std::runtime_error("no reachable plaquette found");
  }
  return best;
}

void run_fixed_sweep(const ExperimentConfig& cfg, bool oracle_only) {
  Lattice lat = lattice_from_config(cfg);
  GaugeConfig gauge = gauge_from_config(cfg, lat);
  CsvWriter csv(cfg.output);
  if (oracle_only) {
    csv.header({"kappa", "E_exact"});
  } else {
    csv.header({"kappa", "E_vqe", "E_exact", "E_error", "infidelity"});
  }

  auto job = [&](std::size_t idx) -> std::vector<std::string> {
    Couplings c = cfg.couplings;
    c.kappa = cfg.sweep_kappa[idx];
    c.kappa_int = cfg.tie_kappa_int ? c.kappa : cfg.couplings.kappa_int;
    PauliSum h = fixed_gauge_hamiltonian(lat, gauge, c);
    GroundMultiplet gm = ground_multiplet(h, 6);
    double e_exact = c.kappa_int == 0.0
                         ? ground_energy(canonical_form(build_K(lat, gauge, c).K))
                         : gm.energy;
    if (oracle_only) {
      return {fmt17(c.kappa), fmt17(e_exact)};
    }
    VQEResult r = run_fixed_gauge(lat, gauge, c, point_optimizer(cfg, idx));
    check_variational_bound(r.best_energy, e_exact);
    Circuit circuit = fixed_gauge_ansatz(lat.n_sites(), c.kappa_int != 0.0,
                                         r.parity_branch == "odd");
    State psi = zero_state(circuit.n_qubits);
    apply_circuit(circuit, r.best_parameters, psi);
    double infid = infidelity_vs_multiplet(gm, psi);
    double e_error = std::abs((r.best_energy - e_exact) / e_exact);
    return {fmt17(c.kappa), fmt17(r.best_energy), fmt17(e_exact), fmt17(e_error),
            fmt17(infid)};
  };
  ordered_parallel_rows(cfg.sweep_kappa.size(), csv, job);
}

void run_dynamical_sweep(const ExperimentConfig& cfg, bool oracle_only) {
  Lattice lat = lattice_from_config(cfg);
  CsvWriter csv(cfg.output);
  if (oracle_only) {
    csv.header({"h", "E_exact", "m_z_exact", "w_exact"});
  } else {
    csv.header({"h", "E_vqe", "E_exact", "m_z_vqe", "m_z_exact", "w_vqe", "w_exact",
                "phys_norm"});
  }

  auto job = [&](std::size_t idx) -> std::vector<std::string> {
    double h0 = cfg.sweep_h0[idx];
    Couplings c = cfg.couplings;
    for (int a = 0; a < 3; ++a) {
      c.h[a] = h0 * cfg.field_direction[a];
    }
    PauliSum spin_h = spin_hamiltonian(lat, c);
    GroundMultiplet gm = ground_multiplet(spin_h, 8);
    double m_z_exact = multiplet_average(gm, mz_spin(lat));
    double w_exact = 0.0;
    for (int p = 0; p < lat.n_plaquettes(); ++p) {
      w_exact += multiplet_average(gm, plaquette_operator_spin(lat, p));
    }
    w_exact /= lat.n_plaquettes();
    if (oracle_only) {
      return {fmt17(h0), fmt17(gm.energy), fmt17(m_z_exact), fmt17(w_exact)};
    }
    VQEResult r = run_dynamical(lat, c, point_optimizer(cfg, idx));
    check_variational_bound(r.best_energy, gm.energy);
    return {fmt17(h0),           fmt17(r.best_energy),  fmt17(gm.energy),
            fmt17(*r.m_z),       fmt17(m_z_exact),      fmt17(*r.w_avg),
            fmt17(w_exact),      fmt17(r.physical_norm)};
  };
  ordered_parallel_rows(cfg.sweep_h0.size(), csv, job);
}

void run_vortex_splitting(const ExperimentConfig& cfg, bool) {
  Lattice lat = lattice_from_config(cfg);
  GaugeConfig gauge = gauge_from_config(cfg, lat);
  CsvWriter csv(cfg.output);
  csv.header({"kappa", "kappa_int", "splitting", "E0"});

  for (double kappa : cfg.sweep_kappa) {
    Couplings c = cfg.couplings;
    c.kappa = kappa;
    c.kappa_int = 0.0;
    CanonicalForm cf = canonical_form(build_K(lat, gauge, c).K);
    csv.row({fmt17(kappa), fmt17(0.0), fmt17(parity_splitting(cf)),
             fmt17(ground_energy(cf))});
  }
  for (double kint : cfg.sweep_kappa_int) {
    if (kint == 0.0) {
      continue;  // the quadratic rows above already cover kappa_int = 0
    }
    for (double kappa : cfg.sweep_kappa) {
      Couplings c = cfg.couplings;
      c.kappa = kappa;
      c.kappa_int = kint;
      PauliSum h = fixed_gauge_hamiltonian(lat, gauge, c);
      SpectrumRequest req;
      req.op = h;
      req.k = 2;
      req.mode = SpectrumMode::dense;
      auto pairs = lowest_eigenpairs(req);
      csv.row({fmt17(kappa), fmt17(kint), fmt17(pairs[1].value - pairs[0].value),
               fmt17(pairs[0].value)});
    }
  }
}

void run_single(const ExperimentConfig& cfg, bool oracle_only) {
  Lattice lat = lattice_from_config(cfg);
  CsvWriter csv(cfg.output);
  if (cfg.mode == "fixed-gauge") {
    GaugeConfig gauge = gauge_from_config(cfg, lat);
    const Couplings& c = cfg.couplings;
    PauliSum h = fixed_gauge_hamiltonian(lat, gauge, c);
    GroundMultiplet gm = ground_multiplet(h, 6);
    double e_exact = c.kappa_int == 0.0
                         ? ground_energy(canonical_form(build_K(lat, gauge, c).K))
                         : gm.energy;
    if (oracle_only) {
      csv.header({"E_exact"});
      csv.row({fmt17(e_exact)});
      return;
    }
    OptimizerConfig opt = cfg.optimizer;
    std::vector<std::pair<std::size_t, double>> trace;
    if (!cfg.trace_path.empty()) {
      opt.trace = &trace;
    }
    VQEResult r = run_fixed_gauge(lat, gauge, c, opt);
    if (!cfg.trace_path.empty()) {
      write_trace(cfg.trace_path, trace);
    }
    check_variational_bound(r.best_energy, e_exact);
    Circuit circuit =
        fixed_gauge_ansatz(lat.n_sites(), c.kappa_int != 0.0, r.parity_branch == "odd");
    State psi = zero_state(circuit.n_qubits);
    apply_circuit(circuit, r.best_parameters, psi);
    csv.header({"E_vqe", "E_exact", "E_error", "infidelity", "branch", "evaluations",
                "converged"});
    csv.row({fmt17(r.best_energy), fmt17(e_exact),
             fmt17(std::abs((r.best_energy - e_exact) / e_exact)),
             fmt17(infidelity_vs_multiplet(gm, psi)), r.parity_branch,
             std::to_string(r.evaluations), r.converged ? "1" : "0"});
    return;
  }

  // dynamical single run
  PauliSum spin_h = spin_hamiltonian(lat, cfg.couplings);
  GroundMultiplet gm = ground_multiplet(spin_h, 8);
  if (oracle_only) {
    csv.header({"E_exact", "m_z_exact", "w_exact"});
    double w_exact = 0.0;
    for (int p = 0; p < lat.n_plaquettes(); ++p) {
      w_exact += multiplet_average(gm, plaquette_operator_spin(lat, p));
    }
    csv.row({fmt17(gm.energy), fmt17(multiplet_average(gm, mz_spin(lat))),
             fmt17(w_exact / lat.n_plaquettes())});
    return;
  }
  OptimizerConfig opt = cfg.optimizer;
  std::vector<std::pair<std::size_t, double>> trace;
  if (!cfg.trace_path.empty()) {
    opt.trace = &trace;
  }
  VQEResult r = run_dynamical(lat, cfg.couplings, opt);
  if (!cfg.trace_path.empty()) {
    write_trace(cfg.trace_path, trace);
  }
  check_variational_bound(r.best_energy, gm.energy);
  csv.header({"E_vqe", "E_exact", "E_error", "m_z_vqe", "w_vqe", "phys_norm",
              "proj_residual", "evaluations", "converged"});
  csv.row({fmt17(r.best_energy), fmt17(gm.energy),
           fmt17(std::abs((r.best_energy - gm.energy) / gm.energy)), fmt17(*r.m_z),
           fmt17(*r.w_avg), fmt17(r.physical_norm), fmt17(*r.projected_residual),
           std::to_string(r.evaluations), r.converged ? "1" : "0"});
}

}  // namespace

Lattice lattice_from_config(const ExperimentConfig& cfg) {
  return build_lattice(cfg.lattice_kind, cfg.L1, cfg.L2);
}

GaugeConfig gauge_from_config(const ExperimentConfig& cfg, const Lattice& lattice) {
  GaugeConfig g = standard_gauge(lattice);
  if (cfg.vortex_pair) {
    g = insert_vortex_pair(lattice, g, cfg.vortex_pair->first, cfg.vortex_pair->second);
  } else if (cfg.vortices_default || cfg.experiment == "vortex-splitting") {
    g = insert_vortex_pair(lattice, g, 0, default_far_plaquette(lattice, 0));
  }
  return g;
}

void run_experiment(const ExperimentConfig& cfg, bool oracle_only) {
  auto diags = validate(cfg);
  if (!diags.empty()) {
    std::string msg = "invalid config:";
    for (const auto& d : diags) {
      msg += "\n  " + d;
    }
    throw config_error(msg);
  }
  write_manifest(cfg);
  if (cfg.experiment == "fixed-gauge-sweep") {
    run_fixed_sweep(cfg, oracle_only);
  } else if (cfg.experiment == "dynamical-field-sweep") {
    run_dynamical_sweep(cfg, oracle_only);
  } else if (cfg.experiment == "vortex-splitting") {
    run_vortex_splitting(cfg, oracle_only);
  } else {
    run_single(cfg, oracle_only);
  }
}

}  // namespace kitaev
