#include "kitaev/statevector.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <stdexcept>
#include <thread>

namespace kitaev {

namespace {

// Phase of word action on basis state b: word|b> = i^{#Y} (-1)^{popcount(b&z)} |b^x>.
inline cplx word_phase(const PauliString& p, std::uint64_t b) {
  static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cplx ph = ipow[std::popcount(p.x & p.z) & 3];
  if (std::popcount(b & p.z) & 1) {
    ph = -ph;
  }
  return ph;
}

}  // namespace

double State::norm() const {
  double s = 0.0;
  for (const auto& a : amps) {
    s += std::norm(a);
  }
  return std::sqrt(s);
}

State zero_state(std::uint32_t n_qubits) {
  if (n_qubits == 0 || n_qubits > kMaxStateQubits) {
    throw std::invalid_argument("state size cap: need 1 <= n <= " +
                                std::to_string(kMaxStateQubits));
  }
  State s(n_qubits);
  s.amps[0] = 1.0;
  return s;
}

void apply_pauli(State& state, const PauliString& p) {
  if (p.n_qubits != state.n_qubits) {
    throw std::invalid_argument("operator/state qubit count mismatch");
  }
  const std::uint64_t xmask = p.x;
  const std::size_t dim = state.dim();
  if (xmask == 0) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      state.amps[b] *= p.coeff * word_phase(p, b);
    }
    return;
  }
  for (std::uint64_t b = 0; b < dim; ++b) {
    std::uint64_t partner = b ^ xmask;
    if (partner < b) {
      continue;
    }
    cplx ab = state.amps[b];
    cplx ap = state.amps[partner];
    state.amps[partner] = p.coeff * word_phase(p, b) * ab;
    state.amps[b] = p.coeff * word_phase(p, partner) * ap;
  }
}

void accumulate_pauli_sum(const PauliSum& sum, const State& state, State& out) {
  if (sum.n_qubits != state.n_qubits || out.n_qubits != state.n_qubits) {
    throw std::invalid_argument("operator/state qubit count mismatch");
  }
  const std::size_t dim = state.dim();
  for (const auto& t : sum.terms) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      out.amps[b ^ t.x] += t.coeff * word_phase(t, b) * state.amps[b];
    }
  }
}

State apply_pauli_sum(const PauliSum& sum, const State& state) {
  State out(state.n_qubits);
  accumulate_pauli_sum(sum, state, out);
  return out;
}

void apply_rotation(State& state, const PauliString& p, double theta) {
  if (p.n_qubits != state.n_qubits) {
    throw std::invalid_argument("operator/state qubit count mismatch");
  }
  if (!p.is_unit_hermitian()) {
    throw std::invalid_argument("rotation generator must be a unit Hermitian string");
  }
  const double angle = theta * p.coeff.real();
  const double c = std::cos(angle);
  const cplx is{0.0, std::sin(angle)};
  const std::uint64_t xmask = p.x;
  const std::size_t dim = state.dim();
  // Unit word with the sign moved into the angle.
  PauliString unit(1.0, p.n_qubits, p.x, p.z);
  if (xmask == 0) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      state.amps[b] *= c + is * word_phase(unit, b);
    }
    return;
  }
  for (std::uint64_t b = 0; b < dim; ++b) {
    std::uint64_t partner = b ^ xmask;
    if (partner < b) {
      continue;
    }
    cplx ab = state.amps[b];
    cplx ap = state.amps[partner];
    state.amps[b] = c * ab + is * word_phase(unit, partner) * ap;
    state.amps[partner] = c * ap + is * word_phase(unit, b) * ab;
  }
}

unsigned worker_threads() {
  static unsigned cached = [] {
    if (const char* env = std::getenv("KITAEV_VQE_THREADS")) {
      long v = std::strtol(env, nullptr, 10);
      if (v >= 1 && v <= 256) {
        return static_cast<unsigned>(v);
      }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
  }();
  return cached;
}

namespace {

cplx term_block_expectation(const PauliSum& h, const State& state, std::size_t lo,
                            std::size_t hi) {
  const std::size_t dim = state.dim();
  cplx acc{0.0, 0.0};
  for (std::size_t t = lo; t < hi; ++t) {
    const PauliString& p = h.terms[t];
    cplx term{0.0, 0.0};
    for (std::uint64_t b = 0; b < dim; ++b) {
      term += std::conj(state.amps[b ^ p.x]) * word_phase(p, b) * state.amps[b];
    }
    acc += p.coeff * term;
  }
  return acc;
}

}  // namespace

cplx expectation_complex(const PauliSum& op, const State& state) {
  if (op.n_qubits != state.n_qubits) {
    throw std::invalid_argument("operator/state qubit count mismatch");
  }
  constexpr std::size_t kChunk = 32;
  const std::size_t n_terms = op.terms.size();
  const unsigned threads = worker_threads();
  if (threads <= 1 || n_terms <= kChunk) {
    return term_block_expectation(op, state, 0, n_terms);
  }
  // Fixed-size chunks with an ordered combine keep the result independent of
  // the scheduling and of the thread count.
  std::vector<std::future<cplx>> futures;
  for (std::size_t lo = 0; lo < n_terms; lo += kChunk) {
    std::size_t hi = std::min(lo + kChunk, n_terms);
    futures.push_back(std::async(std::launch::async | std::launch::deferred,
                                 term_block_expectation, std::cref(op), std::cref(state),
                                 lo, hi));
  }
  cplx acc{0.0, 0.0};
  for (auto& f : futures) {
    acc += f.get();
  }
  return acc;
}

double expectation(const PauliSum& h, const State& state) {
  cplx v = expectation_complex(h, state);
  if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v.real()))) {
    throw std::runtime_error("expectation of non-Hermitian operator (imag residue " +
                             std::to_string(v.imag()) + ")");
  }
  return v.real();
}

cplx overlap(const State& a, const State& b) {
  if (a.n_qubits != b.n_qubits) {
    throw std::invalid_argument("state size mismatch");
  }
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) {
    acc += std::conj(a.amps[i]) * b.amps[i];
  }
  return acc;
}

void normalize(State& state) {
  double n = state.norm();
  if (n == 0.0) {
    throw std::runtime_error("cannot normalize the zero vector");
  }
  for (auto& a : state.amps) {
    a /= n;
  }
}

void dump_state(const State& state, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  for (const auto& a : state.amps) {
    double re = a.real();
    double im = a.imag();
    std::fwrite(&re, sizeof(double), 1, f);
    std::fwrite(&im, sizeof(double), 1, f);
  }
  std::fclose(f);
}

}  // namespace kitaev
