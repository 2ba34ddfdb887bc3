#pragma once

#include <Eigen/Dense>
#include <vector>

#include "kitaev/hamiltonians.hpp"
#include "kitaev/pauli.hpp"
#include "kitaev/statevector.hpp"

namespace kitaev {

enum class SpectrumMode { dense, iterative };

struct SpectrumRequest {
  PauliSum op;
  int k = 1;
  SpectrumMode mode = SpectrumMode::dense;
};

struct EigenPair {
  double value = 0.0;
  State vector;
};

inline constexpr int kDenseQubitCap = 12;
inline constexpr int kIterativeQubitCap = 20;

// k lowest eigenpairs of a Hermitian PauliSum, ascending, with residual
// ||Hv - lambda v|| <= 1e-8 enforced as a postcondition.
std::vector<EigenPair> lowest_eigenpairs(const SpectrumRequest& req);

// Ground energy of the spin-language Hamiltonian (dense when it fits,
// iterative otherwise).
double ground_energy_spin(const Lattice& lattice, const Couplings& c);

// Dense matrix of a PauliSum (basis index = computational bitstring).
Eigen::MatrixXcd dense_matrix(const PauliSum& op);

}  // namespace kitaev
