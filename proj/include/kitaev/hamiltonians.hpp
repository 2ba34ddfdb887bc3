#pragma once

#include <array>
#include <vector>

#include "kitaev/lattice.hpp"
#include "kitaev/pauli.hpp"

namespace kitaev {

struct Couplings {
  std::array<double, 3> J{1.0, 1.0, 1.0};
  double kappa = 0.0;
  double kappa_int = 0.0;
  std::array<double, 3> h{0.0, 0.0, 0.0};

  bool has_field() const { return h[0] != 0.0 || h[1] != 0.0 || h[2] != 0.0; }
};

// (i,j,k;l): i, j, k are the x-, y-, z-neighbors of l. The sign n is +1 when
// the (x,y,z)-neighbor directions wind counterclockwise around l in the
// standard embedding and -1 otherwise.
struct Triple {
  int i = 0;
  int j = 0;
  int k = 0;
  int l = 0;
  int n = 1;
};

using TripleSet = std::vector<Triple>;

TripleSet build_triples(const Lattice& lattice);

// Largest spin count for which the projector (and the 2N-qubit operators
// that multiply it) are expanded exactly.
inline constexpr int kProjectorSpinCap = 12;

// Spin-language Hamiltonian on N qubits:
//   -sum_alpha J_alpha sigma^a sigma^a  - three-spin kappa/kappa_int terms
//   - sum_i h . sigma_i.
PauliSum spin_hamiltonian(const Lattice& lattice, const Couplings& c);

// Fixed-gauge fermionic Hamiltonian on N/2 qubits (Jordan-Wigner image of the
// quadratic edge/kappa terms plus the quartic kappa_int terms). Requires h=0.
PauliSum fixed_gauge_hamiltonian(const Lattice& lattice, const GaugeConfig& gauge,
                                 const Couplings& c);

// Dynamical-gauge Hamiltonian on 2N qubits. Edge and field terms are the
// exact Majorana images; kappa/kappa_int enter in their gauge-diagonal form
// (Z operators on the gauge qubits).
PauliSum dynamical_gauge_hamiltonian(const Lattice& lattice, const Couplings& c);

// Projector onto the physical subspace, prod_i (1 + D_i)/2, expanded exactly.
PauliSum projector(const Lattice& lattice);

// Majorana building blocks in the 2N-qubit dynamical layout.
PauliString matter_majorana(const Lattice& lattice, int site, std::uint32_t n_qubits);
PauliString bond_majorana(const Lattice& lattice, int site, EdgeType alpha,
                          std::uint32_t n_qubits);
PauliString d_operator(const Lattice& lattice, int site);
// Exact image of sigma^alpha_site = i b^alpha c.
PauliString site_pauli_dynamical(const Lattice& lattice, int site, EdgeType alpha);

struct DynamicalObservables {
  PauliSum m_z;                 // sum_i sigma^z_i / N
  std::vector<PauliSum> w_ops;  // one flux operator per plaquette
};

DynamicalObservables observables(const Lattice& lattice);

// Flux operator of plaquette p as Z operators on its gauge qubits.
PauliSum plaquette_operator_dynamical(const Lattice& lattice, int p);

// Spin-language counterparts used by the exact-diagonalization oracle. For
// plaquettes whose boundary walk traverses an edge twice the operator is
// built on the reduced loop(s); the naive cycle product is wrong there.
PauliSum plaquette_operator_spin(const Lattice& lattice, int p);
PauliSum mz_spin(const Lattice& lattice);

}  // namespace kitaev
