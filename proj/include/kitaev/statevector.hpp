#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "kitaev/pauli.hpp"

namespace kitaev {

// Dense n-qubit state. Qubit 0 is the lowest bit of the amplitude index.
struct State {
  std::uint32_t n_qubits = 0;
  std::vector<cplx> amps;

  State() = default;
  explicit State(std::uint32_t n) : n_qubits(n), amps(std::size_t{1} << n, cplx{0.0, 0.0}) {}

  std::size_t dim() const { return amps.size(); }
  double norm() const;
};

inline constexpr std::uint32_t kMaxStateQubits = 22;

State zero_state(std::uint32_t n_qubits);

// In-place exact action of a PauliString (including its coefficient).
void apply_pauli(State& state, const PauliString& p);

// out += sum(state); `out` must already have matching size.
void accumulate_pauli_sum(const PauliSum& sum, const State& state, State& out);
State apply_pauli_sum(const PauliSum& sum, const State& state);

// In-place exp(i*theta*P) for a unit Hermitian string P (its +-1 coefficient
// is folded into the angle).
void apply_rotation(State& state, const PauliString& p, double theta);

// <state|H|state> for Hermitian H; throws if the imaginary residue exceeds
// 1e-10. Parallelizes over fixed-size term chunks, so the reduction order is
// independent of the thread count.
double expectation(const PauliSum& h, const State& state);

// <state|P|state> for a general (possibly non-Hermitian) operator.
cplx expectation_complex(const PauliSum& op, const State& state);

cplx overlap(const State& a, const State& b);

void normalize(State& state);

// Debug dump: little-endian pairs of float64 per amplitude.
void dump_state(const State& state, const std::string& path);

// Thread count used by parallel loops; reads KITAEV_VQE_THREADS once,
// defaulting to the hardware concurrency.
unsigned worker_threads();

}  // namespace kitaev
