#include "kitaev/ansatz.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace kitaev {

namespace {

// Generator of exp[i theta (f^dag_p f^dag_q + f_q f_p)] (variant 1) or
// exp[theta (f^dag_p f^dag_q - f_q f_p)] (variant 2), as a Hermitian sum.
PauliSum pair_generator(int variant, std::uint32_t p, bool hole_p, std::uint32_t q,
                        bool hole_q, std::uint32_t nq) {
  PauliSum raise_p = jw_mode_raise(p, nq, hole_p);
  PauliSum raise_q = jw_mode_raise(q, nq, hole_q);
  PauliSum lower_p = jw_mode_lower(p, nq, hole_p);
  PauliSum lower_q = jw_mode_lower(q, nq, hole_q);
  PauliSum create = multiply(raise_p, raise_q);
  PauliSum annihilate = multiply(lower_q, lower_p);
  PauliSum g(nq);
  if (variant == 1) {
    g = simplify(add(create, annihilate));
  } else {
    g = simplify(scale(add(create, scale(annihilate, -1.0)), cplx(0.0, -1.0)));
  }
  return g;
}

PauliSum quartic_generator(int variant, std::uint32_t i, std::uint32_t j, std::uint32_t k,
                           std::uint32_t l, std::uint32_t nq) {
  PauliSum create = multiply(multiply(jw_mode_raise(i, nq, false), jw_mode_raise(j, nq, false)),
                             multiply(jw_mode_raise(k, nq, false), jw_mode_raise(l, nq, false)));
  PauliSum annihilate =
      multiply(multiply(jw_mode_lower(l, nq, false), jw_mode_lower(k, nq, false)),
               multiply(jw_mode_lower(j, nq, false), jw_mode_lower(i, nq, false)));
  if (variant == 1) {
    return simplify(add(create, annihilate));
  }
  return simplify(scale(add(create, scale(annihilate, -1.0)), cplx(0.0, -1.0)));
}

void check_generator(const PauliSum& g) {
  for (const auto& t : g.terms) {
    if (std::abs(t.coeff.imag()) > kCoeffTol) {
      throw std::logic_error("ansatz generator has a complex weight");
    }
  }
  for (std::size_t a = 0; a < g.terms.size(); ++a) {
    for (std::size_t b = a + 1; b < g.terms.size(); ++b) {
      if (!strings_commute(g.terms[a], g.terms[b])) {
        throw std::logic_error("ansatz generator terms do not commute");
      }
    }
  }
}

void push_gate(Circuit& circuit, PauliSum generator) {
  check_generator(generator);
  circuit.gates.push_back({std::move(generator), circuit.parameter_count++});
}

}  // namespace

std::string Circuit::to_string() const {
  std::string out;
  char buf[64];
  for (const auto& p : prefix) {
    out += "fixed * " + p.word() + "\n";
  }
  for (const auto& g : gates) {
    for (const auto& t : g.generator.terms) {
      std::snprintf(buf, sizeof(buf), "theta[%d] * %+g ", g.param_index, t.coeff.real());
      out += buf;
      out += t.word();
      out += '\n';
    }
  }
  return out;
}

Circuit fixed_gauge_ansatz(int n_spins, bool include_quartic, bool particle_hole) {
  if (n_spins < 4 || n_spins % 2 != 0) {
    throw std::invalid_argument("fixed-gauge ansatz needs an even spin count >= 4");
  }
  const std::uint32_t n_modes = static_cast<std::uint32_t>(n_spins / 2);
  Circuit circuit;
  circuit.n_qubits = n_modes;
  if (particle_hole) {
    circuit.prefix.push_back(jw_matter(0, 0, n_modes));  // first Majorana: X on qubit 0
  }
  for (std::uint32_t i = 0; i < n_modes; ++i) {
    for (std::uint32_t j = i + 1; j < n_modes; ++j) {
      push_gate(circuit, pair_generator(1, i, false, j, false, n_modes));
      push_gate(circuit, pair_generator(2, i, false, j, false, n_modes));
    }
  }
  if (include_quartic) {
    for (std::uint32_t i = 0; i < n_modes; ++i) {
      for (std::uint32_t j = i + 1; j < n_modes; ++j) {
        for (std::uint32_t k = j + 1; k < n_modes; ++k) {
          for (std::uint32_t l = k + 1; l < n_modes; ++l) {
            push_gate(circuit, quartic_generator(1, i, j, k, l, n_modes));
            push_gate(circuit, quartic_generator(2, i, j, k, l, n_modes));
          }
        }
      }
    }
  }
  return circuit;
}

Circuit dynamical_gauge_ansatz(const Lattice& lattice) {
  const int n_spins = lattice.n_sites();
  const std::uint32_t n_matter = static_cast<std::uint32_t>(n_spins / 2);
  const std::uint32_t n_modes = static_cast<std::uint32_t>(2 * n_spins);
  Circuit circuit;
  circuit.n_qubits = n_modes;
  // Matter-matter pairs.
  for (std::uint32_t i = 0; i < n_matter; ++i) {
    for (std::uint32_t j = i + 1; j < n_matter; ++j) {
      push_gate(circuit, pair_generator(1, i, false, j, false, n_modes));
      push_gate(circuit, pair_generator(2, i, false, j, false, n_modes));
    }
  }
  // Gauge-gauge pairs (occupied-orbital convention on gauge modes).
  for (std::uint32_t mu = n_matter; mu < n_modes; ++mu) {
    for (std::uint32_t nu = mu + 1; nu < n_modes; ++nu) {
      push_gate(circuit, pair_generator(1, mu, true, nu, true, n_modes));
      push_gate(circuit, pair_generator(2, mu, true, nu, true, n_modes));
    }
  }
  // Matter-gauge pairs.
  for (std::uint32_t i = 0; i < n_matter; ++i) {
    for (std::uint32_t nu = n_matter; nu < n_modes; ++nu) {
      push_gate(circuit, pair_generator(1, i, false, nu, true, n_modes));
      push_gate(circuit, pair_generator(2, i, false, nu, true, n_modes));
    }
  }
  return circuit;
}

void apply_circuit(const Circuit& circuit, const std::vector<double>& theta, State& state) {
  apply_circuit_shifted(circuit, theta, -1, -1, 0.0, state);
}

void apply_circuit_shifted(const Circuit& circuit, const std::vector<double>& theta,
                     int shift_gate, int shift_term, double shift, State& state) {
  if (static_cast<int>(theta.size()) != circuit.parameter_count) {
    throw std::invalid_argument("parameter vector length mismatch");
  }
  if (state.n_qubits != circuit.n_qubits) {
    throw std::invalid_argument("circuit/state qubit count mismatch");
  }
  for (const auto& p : circuit.prefix) {
    apply_pauli(state, p);
  }
  for (int g = 0; g < static_cast<int>(circuit.gates.size()); ++g) {
    const Gate& gate = circuit.gates[g];
    const double th = theta[gate.param_index];
    for (int t = 0; t < static_cast<int>(gate.generator.terms.size()); ++t) {
      const PauliString& term = gate.generator.terms[t];
      double angle = th * term.coeff.real();
      if (g == shift_gate && t == shift_term) {
        angle += shift;
      }
      apply_rotation(state, PauliString(1.0, term.n_qubits, term.x, term.z), angle);
    }
  }
}

}  // namespace kitaev
