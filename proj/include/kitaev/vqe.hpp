#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kitaev/ansatz.hpp"
#include "kitaev/hamiltonians.hpp"
#include "kitaev/lattice.hpp"
#include "kitaev/pauli.hpp"

namespace kitaev {

struct OptimizerConfig {
  std::string method = "lbfgs";
  std::size_t max_evaluations = 400000;
  double fd_step = 1e-5;
  double tolerance = 1e-10;  // on the cost change
  int restarts = 3;
  std::uint64_t seed = 1;
  // adjoint | finite-difference | shift-rule
  std::string gradient = "adjoint";
  // Optional sink for (evaluation index, cost) records of accepted steps.
  std::vector<std::pair<std::size_t, double>>* trace = nullptr;
};

struct VQEResult {
  double best_energy = 0.0;
  std::vector<double> best_parameters;
  std::string parity_branch;  // "even" or "odd" (fixed-gauge runs)
  double physical_norm = 1.0;
  std::size_t evaluations = 0;
  bool converged = false;
  std::optional<double> m_z;
  std::optional<double> w_avg;
  std::optional<double> projected_residual;  // energy variance of the projected state
};

struct MinimizeResult {
  std::vector<double> parameters;
  double cost = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

class degenerate_cost_error : public std::runtime_error {
 public:
  explicit degenerate_cost_error(double p_norm)
      : std::runtime_error("projected cost is degenerate: <P> = " + std::to_string(p_norm)),
        p_norm_(p_norm) {}
  double p_norm() const { return p_norm_; }

 private:
  double p_norm_;
};

// Cost functions bind the circuit on |0...0>, so they are safe to evaluate
// concurrently for distinct parameter vectors.
class CostFunction {
 public:
  virtual ~CostFunction() = default;
  virtual int dimension() const = 0;
  virtual double value(const std::vector<double>& theta) const = 0;
  // Returns the cost and fills `grad` (adjoint differentiation).
  virtual double value_and_grad(const std::vector<double>& theta,
                                std::vector<double>& grad) const = 0;
};

class EnergyCost : public CostFunction {
 public:
  EnergyCost(PauliSum h, Circuit circuit);
  int dimension() const override { return circuit_.parameter_count; }
  double value(const std::vector<double>& theta) const override;
  double value_and_grad(const std::vector<double>& theta,
                        std::vector<double>& grad) const override;
  const Circuit& circuit() const { return circuit_; }
  const PauliSum& hamiltonian() const { return h_; }

 private:
  PauliSum h_;
  Circuit circuit_;
};

class ProjectedCost : public CostFunction {
 public:
  // PH is simplified once here and reused by every evaluation.
  ProjectedCost(const PauliSum& h, const PauliSum& p, Circuit circuit);
  int dimension() const override { return circuit_.parameter_count; }
  double value(const std::vector<double>& theta) const override;
  double value_and_grad(const std::vector<double>& theta,
                        std::vector<double>& grad) const override;
  // <P> at the given parameters.
  double physical_norm(const std::vector<double>& theta) const;
  const PauliSum& ph() const { return ph_; }
  const PauliSum& p() const { return p_; }
  const Circuit& circuit() const { return circuit_; }

 private:
  PauliSum ph_;
  PauliSum p_;
  Circuit circuit_;
};

double energy_cost(const PauliSum& h, const Circuit& circuit,
                   const std::vector<double>& theta);
double projected_cost(const PauliSum& h, const PauliSum& p, const Circuit& circuit,
                      const std::vector<double>& theta);

// Central finite differences, evaluated in parallel over components.
std::vector<double> finite_difference_gradient(const CostFunction& cost,
                                               const std::vector<double>& theta,
                                               double step);
// Parameter-shift gradient (exact for unit-Pauli rotations).
std::vector<double> shift_rule_gradient(const PauliSum& h, const Circuit& circuit,
                                        const std::vector<double>& theta);

// L-BFGS minimization; deterministic given the config seed. Stops on the
// cost-change tolerance or the evaluation budget (converged=false then).
MinimizeResult minimize(const CostFunction& cost, const std::vector<double>& theta0,
                        const OptimizerConfig& cfg);
// Convenience overload for plain callables (finite-difference gradients).
MinimizeResult minimize(const std::function<double(const std::vector<double>&)>& f,
                        const std::vector<double>& theta0, const OptimizerConfig& cfg);

// Fixed-gauge driver: optimizes both parity branches per the branch policy
// and returns the lower one.
VQEResult run_fixed_gauge(const Lattice& lattice, const GaugeConfig& gauge,
                          const Couplings& c, const OptimizerConfig& cfg);

// Dynamical-gauge driver: optimizes the projected cost from |0...0> and
// reports m_z, the plaquette average and the physical norm.
VQEResult run_dynamical(const Lattice& lattice, const Couplings& c,
                        const OptimizerConfig& cfg);

}  // namespace kitaev
