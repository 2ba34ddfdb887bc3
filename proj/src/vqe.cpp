#include "kitaev/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <future>
#include <limits>
#include <random>

#include "kitaev/freefermion.hpp"
#include "kitaev/statevector.hpp"

namespace kitaev {

namespace {

State bound_state(const Circuit& circuit, const std::vector<double>& theta) {
  State s = zero_state(circuit.n_qubits);
  apply_circuit(circuit, theta, s);
  return s;
}

// grad_k = -2 Im <lambda_k| G_k |psi_k> accumulated by sweeping the circuit
// backwards; `lambdas` start as O_i |psi_L> and psi as |psi_L>.
void adjoint_backward(const Circuit& circuit, const std::vector<double>& theta,
                      State& psi, std::vector<State>& lambdas,
                      std::vector<std::vector<double>>& grads) {
  State tmp(psi.n_qubits);
  for (int g = static_cast<int>(circuit.gates.size()) - 1; g >= 0; --g) {
    const Gate& gate = circuit.gates[g];
    std::fill(tmp.amps.begin(), tmp.amps.end(), cplx{0.0, 0.0});
    accumulate_pauli_sum(gate.generator, psi, tmp);
    for (std::size_t o = 0; o < lambdas.size(); ++o) {
      grads[o][gate.param_index] += -2.0 * overlap(lambdas[o], tmp).imag();
    }
    // Undo the gate on psi and all lambdas.
    for (int t = static_cast<int>(gate.generator.terms.size()) - 1; t >= 0; --t) {
      const PauliString& term = gate.generator.terms[t];
      PauliString unit(1.0, term.n_qubits, term.x, term.z);
      double angle = -theta[gate.param_index] * term.coeff.real();
      apply_rotation(psi, unit, angle);
      for (auto& lam : lambdas) {
        apply_rotation(lam, unit, angle);
      }
    }
  }
}

}  // namespace

EnergyCost::EnergyCost(PauliSum h, Circuit circuit)
    : h_(simplify(std::move(h))), circuit_(std::move(circuit)) {
  if (!h_.is_hermitian()) {
    throw std::invalid_argument("energy cost needs a Hermitian Hamiltonian");
  }
  if (h_.n_qubits != circuit_.n_qubits) {
    throw std::invalid_argument("Hamiltonian/circuit dimension mismatch");
  }
}

double EnergyCost::value(const std::vector<double>& theta) const {
  State psi = bound_state(circuit_, theta);
  return expectation(h_, psi);
}

double EnergyCost::value_and_grad(const std::vector<double>& theta,
                                  std::vector<double>& grad) const {
  State psi = bound_state(circuit_, theta);
  std::vector<State> lambdas{apply_pauli_sum(h_, psi)};
  double e = overlap(psi, lambdas[0]).real();
  grad.assign(theta.size(), 0.0);
  std::vector<std::vector<double>> grads{grad};
  adjoint_backward(circuit_, theta, psi, lambdas, grads);
  grad = grads[0];
  return e;
}

ProjectedCost::ProjectedCost(const PauliSum& h, const PauliSum& p, Circuit circuit)
    : ph_(multiply(p, h)), p_(simplify(p)), circuit_(std::move(circuit)) {
  if (h.n_qubits != p.n_qubits || h.n_qubits != circuit_.n_qubits) {
    throw std::invalid_argument("H/P/circuit dimension mismatch");
  }
  if (!ph_.is_hermitian()) {
    // PH is Hermitian iff [P, H] = 0, which physical Hamiltonians satisfy.
    throw std::invalid_argument("P*H is not Hermitian; projector and H must commute");
  }
}

double ProjectedCost::value(const std::vector<double>& theta) const {
  State psi = bound_state(circuit_, theta);
  double pnorm = expectation(p_, psi);
  if (pnorm < 1e-8) {
    throw degenerate_cost_error(pnorm);
  }
  return expectation(ph_, psi) / pnorm;
}

double ProjectedCost::physical_norm(const std::vector<double>& theta) const {
  State psi = bound_state(circuit_, theta);
  return expectation(p_, psi);
}

double ProjectedCost::value_and_grad(const std::vector<double>& theta,
                                     std::vector<double>& grad) const {
  State psi = bound_state(circuit_, theta);
  std::vector<State> lambdas{apply_pauli_sum(ph_, psi), apply_pauli_sum(p_, psi)};
  double num = overlap(psi, lambdas[0]).real();
  double den = overlap(psi, lambdas[1]).real();
  if (den < 1e-8) {
    throw degenerate_cost_error(den);
  }
  double cost = num / den;
  std::vector<std::vector<double>> grads(2, std::vector<double>(theta.size(), 0.0));
  adjoint_backward(circuit_, theta, psi, lambdas, grads);
  grad.assign(theta.size(), 0.0);
  for (std::size_t k = 0; k < theta.size(); ++k) {
    grad[k] = (grads[0][k] - cost * grads[1][k]) / den;
  }
  return cost;
}

double energy_cost(const PauliSum& h, const Circuit& circuit,
                   const std::vector<double>& theta) {
  return EnergyCost(h, circuit).value(theta);
}

double projected_cost(const PauliSum& h, const PauliSum& p, const Circuit& circuit,
                      const std::vector<double>& theta) {
  return ProjectedCost(h, p, circuit).value(theta);
}

std::vector<double> finite_difference_gradient(const CostFunction& cost,
                                               const std::vector<double>& theta,
                                               double step) {
  const std::size_t n = theta.size();
  std::vector<double> grad(n, 0.0);
  const unsigned threads = std::max(1u, worker_threads());
  auto component = [&](std::size_t k) {
    std::vector<double> tp = theta, tm = theta;
    tp[k] += step;
    tm[k] -= step;
    return (cost.value(tp) - cost.value(tm)) / (2.0 * step);
  };
  if (threads <= 1) {
    for (std::size_t k = 0; k < n; ++k) {
      grad[k] = component(k);
    }
    return grad;
  }
  std::vector<std::future<double>> futures(n);
  for (std::size_t k = 0; k < n; ++k) {
    futures[k] = std::async(std::launch::async | std::launch::deferred, component, k);
  }
  for (std::size_t k = 0; k < n; ++k) {
    grad[k] = futures[k].get();
  }
  return grad;
}

std::vector<double> shift_rule_gradient(const PauliSum& h, const Circuit& circuit,
                                        const std::vector<double>& theta) {
  std::vector<double> grad(theta.size(), 0.0);
  const double shift = 0.7853981633974483;  // pi/4
  for (int g = 0; g < static_cast<int>(circuit.gates.size()); ++g) {
    const Gate& gate = circuit.gates[g];
    for (int t = 0; t < static_cast<int>(gate.generator.terms.size()); ++t) {
      double c = gate.generator.terms[t].coeff.real();
      State plus = zero_state(circuit.n_qubits);
      apply_circuit_shifted(circuit, theta, g, t, shift, plus);
      State minus = zero_state(circuit.n_qubits);
      apply_circuit_shifted(circuit, theta, g, t, -shift, minus);
      grad[gate.param_index] += c * (expectation(h, plus) - expectation(h, minus));
    }
  }
  return grad;
}

namespace {

struct EvalBudget {
  std::size_t used = 0;
  std::size_t cap = 0;
  bool exhausted() const { return used >= cap; }
};

// Cost+gradient wrapper honoring the configured gradient mode.
class Objective {
 public:
  Objective(const CostFunction& cost, const OptimizerConfig& cfg, EvalBudget& budget)
      : cost_(cost), cfg_(cfg), budget_(budget) {}

  double value(const std::vector<double>& theta) const {
    budget_.used += 1;
    try {
      return cost_.value(theta);
    } catch (const degenerate_cost_error&) {
      // Nearly unphysical trial point: penalize so the line search backs off.
      return std::numeric_limits<double>::infinity();
    }
  }

  double value_and_grad(const std::vector<double>& theta, std::vector<double>& grad) const {
    if (cfg_.gradient == "finite-difference") {
      budget_.used += 1 + 2 * theta.size();
      grad = finite_difference_gradient(cost_, theta, cfg_.fd_step);
      return cost_.value(theta);
    }
    // Adjoint differentiation costs a small constant number of sweeps.
    budget_.used += 3;
    return cost_.value_and_grad(theta, grad);
  }

 private:
  const CostFunction& cost_;
  const OptimizerConfig& cfg_;
  EvalBudget& budget_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i] * b[i];
  }
  return s;
}

double inf_norm(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) {
    m = std::max(m, std::abs(v));
  }
  return m;
}

}  // namespace

MinimizeResult minimize(const CostFunction& cost, const std::vector<double>& theta0,
                        const OptimizerConfig& cfg) {
  if (cfg.tolerance <= 0.0) {
    throw std::invalid_argument("optimizer tolerance must be positive");
  }
  const std::size_t n = theta0.size();
  EvalBudget budget{0, cfg.max_evaluations};
  Objective obj(cost, cfg, budget);

  std::vector<double> x = theta0;
  std::vector<double> g(n);
  double f = obj.value_and_grad(x, g);

  MinimizeResult best;
  best.parameters = x;
  best.cost = f;
  if (cfg.trace) {
    cfg.trace->push_back({budget.used, f});
  }

  const int memory = 8;
  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;
  std::vector<double> d(n), x_new(n), g_new(n);
  int quiet_steps = 0;

  while (!budget.exhausted()) {
    // Two-loop recursion for the L-BFGS direction.
    d = g;
    std::vector<double> alpha(s_hist.size());
    for (int i = static_cast<int>(s_hist.size()) - 1; i >= 0; --i) {
      alpha[i] = rho_hist[i] * dot(s_hist[i], d);
      for (std::size_t j = 0; j < n; ++j) {
        d[j] -= alpha[i] * y_hist[i][j];
      }
    }
    if (!s_hist.empty()) {
      double gamma = dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
      for (auto& v : d) {
        v *= gamma;
      }
    }
    for (int i = 0; i < static_cast<int>(s_hist.size()); ++i) {
      double beta = rho_hist[i] * dot(y_hist[i], d);
      for (std::size_t j = 0; j < n; ++j) {
        d[j] += s_hist[i][j] * (alpha[i] - beta);
      }
    }
    for (auto& v : d) {
      v = -v;
    }
    double slope = dot(g, d);
    if (slope >= 0.0) {
      // Not a descent direction; reset to steepest descent.
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      for (std::size_t j = 0; j < n; ++j) {
        d[j] = -g[j];
      }
      slope = dot(g, d);
      if (slope == 0.0) {
        best.converged = true;
        break;
      }
    }

    // Backtracking Armijo line search with quadratic interpolation.
    const double c1 = 1e-4;
    double step = 1.0;
    double f_new = f;
    bool accepted = false;
    for (int ls = 0; ls < 40 && !budget.exhausted(); ++ls) {
      for (std::size_t j = 0; j < n; ++j) {
        x_new[j] = x[j] + step * d[j];
      }
      f_new = obj.value(x_new);
      if (std::isfinite(f_new) && f_new <= f + c1 * step * slope) {
        accepted = true;
        break;
      }
      double quad = -0.5 * slope * step * step / (f_new - f - slope * step);
      step = (std::isfinite(quad) && quad > 0.05 * step && quad < 0.95 * step)
                 ? quad
                 : 0.5 * step;
    }
    if (!accepted) {
      break;  // line search failed; gradient is effectively flat
    }

    double f_old = f;
    f = obj.value_and_grad(x_new, g_new);
    std::vector<double> s(n), y(n);
    for (std::size_t j = 0; j < n; ++j) {
      s[j] = x_new[j] - x[j];
      y[j] = g_new[j] - g[j];
    }
    double sy = dot(s, y);
    if (sy > 1e-14) {
      if (static_cast<int>(s_hist.size()) == memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
    }
    x = x_new;
    g = g_new;
    if (cfg.trace) {
      cfg.trace->push_back({budget.used, f});
    }
    if (f < best.cost) {
      best.cost = f;
      best.parameters = x;
    }

    if (std::abs(f_old - f) <= cfg.tolerance) {
      if (++quiet_steps >= 2) {
        best.converged = true;
        break;
      }
    } else {
      quiet_steps = 0;
    }
    if (inf_norm(g) <= 1e-9) {
      best.converged = true;
      break;
    }
  }
  best.evaluations = budget.used;
  return best;
}

namespace {

class CallableCost : public CostFunction {
 public:
  CallableCost(std::function<double(const std::vector<double>&)> f, int dim, double h)
      : f_(std::move(f)), dim_(dim), h_(h) {}
  int dimension() const override { return dim_; }
  double value(const std::vector<double>& theta) const override { return f_(theta); }
  double value_and_grad(const std::vector<double>& theta,
                        std::vector<double>& grad) const override {
    grad = finite_difference_gradient(*this, theta, h_);
    return f_(theta);
  }

 private:
  std::function<double(const std::vector<double>&)> f_;
  int dim_;
  double h_;
};

}  // namespace

MinimizeResult minimize(const std::function<double(const std::vector<double>&)>& f,
                        const std::vector<double>& theta0, const OptimizerConfig& cfg) {
  OptimizerConfig local = cfg;
  local.gradient = "finite-difference";
  CallableCost cost(f, static_cast<int>(theta0.size()), cfg.fd_step);
  return minimize(cost, theta0, local);
}

namespace {

// Optimize with seeded random restarts; keeps the best outcome. `stop_early`
// may end the restart loop once the result is good enough.
MinimizeResult optimize_with_restarts(const CostFunction& cost,
                                      const OptimizerConfig& cfg,
                                      const std::function<bool(double)>& stop_early) {
  std::vector<double> theta0(cost.dimension(), 0.0);
  MinimizeResult best = minimize(cost, theta0, cfg);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> pert(-0.1, 0.1);
  for (int r = 0; r < cfg.restarts; ++r) {
    if (stop_early && stop_early(best.cost)) {
      break;
    }
    std::vector<double> start = best.parameters;
    for (auto& v : start) {
      v += pert(rng);
    }
    MinimizeResult attempt;
    try {
      attempt = minimize(cost, start, cfg);
    } catch (const degenerate_cost_error&) {
      continue;  // perturbation walked into the unphysical region; retry
    }
    best.evaluations += attempt.evaluations;
    if (attempt.cost < best.cost) {
      attempt.evaluations = best.evaluations;
      best = std::move(attempt);
    }
  }
  return best;
}

}  // namespace

VQEResult run_fixed_gauge(const Lattice& lattice, const GaugeConfig& gauge,
                          const Couplings& c, const OptimizerConfig& cfg) {
  if (c.has_field()) {
    throw std::invalid_argument("fixed-gauge VQE requires h=0");
  }
  PauliSum h = fixed_gauge_hamiltonian(lattice, gauge, c);
  const bool interacting = c.kappa_int != 0.0;
  const double e_ff = ground_energy(canonical_form(build_K(lattice, gauge, c).K));

  auto run_branch = [&](bool particle_hole) {
    Circuit circuit =
        fixed_gauge_ansatz(lattice.n_sites(), /*include_quartic=*/interacting, particle_hole);
    EnergyCost cost(h, circuit);
    std::function<bool(double)> stop_early;
    if (!interacting) {
      stop_early = [&](double e) { return e <= e_ff + 1e-9 * std::max(1.0, std::abs(e_ff)); };
    }
    return optimize_with_restarts(cost, cfg, stop_early);
  };

  MinimizeResult even = run_branch(false);
  VQEResult result;
  result.best_energy = even.cost;
  result.best_parameters = even.parameters;
  result.parity_branch = "even";
  result.evaluations = even.evaluations;
  result.converged = even.converged;

  const bool need_odd = interacting || even.cost > e_ff + 1e-6;
  if (need_odd) {
    MinimizeResult odd = run_branch(true);
    result.evaluations += odd.evaluations;
    if (odd.cost < result.best_energy) {
      result.best_energy = odd.cost;
      result.best_parameters = odd.parameters;
      result.parity_branch = "odd";
      result.converged = odd.converged;
    }
  }
  return result;
}

VQEResult run_dynamical(const Lattice& lattice, const Couplings& c,
                        const OptimizerConfig& cfg) {
  if (lattice.n_sites() > kProjectorSpinCap) {
    throw std::invalid_argument("dynamical VQE capped at 12 spins");
  }
  PauliSum h = dynamical_gauge_hamiltonian(lattice, c);
  PauliSum p = projector(lattice);
  Circuit circuit = dynamical_gauge_ansatz(lattice);
  ProjectedCost cost(h, p, circuit);

  MinimizeResult opt = optimize_with_restarts(cost, cfg, nullptr);

  VQEResult result;
  result.best_energy = opt.cost;
  result.best_parameters = opt.parameters;
  result.evaluations = opt.evaluations;
  result.converged = opt.converged;

  State psi = zero_state(circuit.n_qubits);
  apply_circuit(circuit, opt.parameters, psi);
  const double pnorm = expectation(p, psi);
  result.physical_norm = pnorm;

  // Physical observables are evaluated on the projected state via <O P>/<P>.
  DynamicalObservables obs = observables(lattice);
  result.m_z = expectation(multiply(obs.m_z, p), psi) / pnorm;
  if (!obs.w_ops.empty()) {
    double w = 0.0;
    for (const auto& wp : obs.w_ops) {
      w += expectation(multiply(wp, p), psi) / pnorm;
    }
    result.w_avg = w / static_cast<double>(obs.w_ops.size());
  }

  // Energy variance of the projected state, ||(H - E) P psi||^2 / <P>.
  State phs = apply_pauli_sum(cost.ph(), psi);
  double h2 = overlap(phs, phs).real() / pnorm;
  result.projected_residual = h2 - opt.cost * opt.cost;
  return result;
}

}  // namespace kitaev
