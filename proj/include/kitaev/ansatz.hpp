#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kitaev/lattice.hpp"
#include "kitaev/pauli.hpp"
#include "kitaev/statevector.hpp"

namespace kitaev {

// One parameterized layer exp(i * theta[param_index] * generator). The
// generator is a Hermitian sum of mutually commuting unit words with real
// weights, so the exponential factorizes exactly into one rotation per term.
struct Gate {
  PauliSum generator;
  int param_index = 0;
};

struct Circuit {
  std::uint32_t n_qubits = 0;
  int parameter_count = 0;
  std::vector<PauliString> prefix;  // fixed unit-Hermitian gates applied first
  std::vector<Gate> gates;

  std::string to_string() const;
};

// Pair-creation ansatz on N/2 qubits for a system of N spins: for every mode
// pair i<j the two phase variants of (a^dag_i a^dag_j +- a_j a_i), optionally
// preceded by the quadruple-creation variants over i<j<k<l, optionally
// prefixed by the first-Majorana image (particle-hole branch).
Circuit fixed_gauge_ansatz(int n_spins, bool include_quartic, bool particle_hole);

// Pair-creation ansatz on 2N qubits over matter-matter, gauge-gauge and
// matter-gauge mode pairs; 2N(2N-1) parameters in total.
Circuit dynamical_gauge_ansatz(const Lattice& lattice);

// Applies the circuit at the given parameters to `state` in place.
void apply_circuit(const Circuit& circuit, const std::vector<double>& theta, State& state);

// apply_circuit() with one rotation (gate index, generator term index) phase-shifted;
// used by the parameter-shift gradient.
void apply_circuit_shifted(const Circuit& circuit, const std::vector<double>& theta,
                     int shift_gate, int shift_term, double shift, State& state);

}  // namespace kitaev
