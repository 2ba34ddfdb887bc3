#include "kitaev/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace kitaev {

namespace {

constexpr double kRitzTol = 1e-10;
constexpr double kResidualCap = 1e-8;

double residual_norm(const PauliSum& op, const EigenPair& pair) {
  State hv = apply_pauli_sum(op, pair.vector);
  for (std::size_t i = 0; i < hv.dim(); ++i) {
    hv.amps[i] -= pair.value * pair.vector.amps[i];
  }
  return hv.norm();
}

std::vector<EigenPair> dense_eigenpairs(const PauliSum& op, int k) {
  Eigen::MatrixXcd m = dense_matrix(op);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("dense eigensolver did not converge");
  }
  std::vector<EigenPair> out;
  for (int i = 0; i < k; ++i) {
    EigenPair p;
    p.value = solver.eigenvalues()(i);
    p.vector = State(op.n_qubits);
    for (std::size_t b = 0; b < p.vector.dim(); ++b) {
      p.vector.amps[b] = solver.eigenvectors()(static_cast<Eigen::Index>(b), i);
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<EigenPair> lanczos_eigenpairs(const PauliSum& op, int k) {
  const std::size_t dim = std::size_t{1} << op.n_qubits;
  const int max_iter = static_cast<int>(std::min<std::size_t>(dim, 400));

  std::mt19937_64 rng(0x6b697461766b7671ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  State v(op.n_qubits);
  for (auto& a : v.amps) {
    a = cplx(gauss(rng), gauss(rng));
  }
  normalize(v);

  std::vector<State> basis{v};
  std::vector<double> alpha, beta;

  auto tridiag_eigen = [&](int m) {
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < m) {
        t(i, i + 1) = beta[i];
        t(i + 1, i) = beta[i];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    return es;
  };

  for (int it = 0; it < max_iter; ++it) {
    State w = apply_pauli_sum(op, basis[it]);
    if (it > 0) {
      for (std::size_t i = 0; i < dim; ++i) {
        w.amps[i] -= beta[it - 1] * basis[it - 1].amps[i];
      }
    }
    double a = overlap(basis[it], w).real();
    alpha.push_back(a);
    for (std::size_t i = 0; i < dim; ++i) {
      w.amps[i] -= a * basis[it].amps[i];
    }
    // Full reorthogonalization, twice.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        cplx c = overlap(b, w);
        for (std::size_t i = 0; i < dim; ++i) {
          w.amps[i] -= c * b.amps[i];
        }
      }
    }
    double bnorm = w.norm();
    const int m = it + 1;
    const bool invariant = bnorm < 1e-12;

    if (m >= k) {
      auto es = tridiag_eigen(m);
      // Residual of Ritz pair i is |beta_m * y_i(m-1)| in exact arithmetic.
      bool converged = true;
      for (int i = 0; i < k; ++i) {
        if (std::abs(bnorm * es.eigenvectors()(m - 1, i)) > kRitzTol) {
          converged = false;
          break;
        }
      }
      if (converged || invariant) {
        std::vector<EigenPair> out;
        for (int i = 0; i < k; ++i) {
          EigenPair p;
          p.value = es.eigenvalues()(i);
          p.vector = State(op.n_qubits);
          for (int j = 0; j < m; ++j) {
            double y = es.eigenvectors()(j, i);
            for (std::size_t b = 0; b < dim; ++b) {
              p.vector.amps[b] += y * basis[j].amps[b];
            }
          }
          normalize(p.vector);
          out.push_back(std::move(p));
        }
        return out;
      }
    }
    if (invariant) {
      throw std::runtime_error("Lanczos hit an invariant subspace before convergence");
    }
    beta.push_back(bnorm);
    for (std::size_t i = 0; i < dim; ++i) {
      w.amps[i] /= bnorm;
    }
    basis.push_back(std::move(w));
  }
  throw std::runtime_error("Lanczos did not converge within the iteration cap");
}

}  // namespace

Eigen::MatrixXcd dense_matrix(const PauliSum& op) {
  if (op.n_qubits > kDenseQubitCap) {
    throw std::invalid_argument("dense matrix capped at 12 qubits");
  }
  const std::size_t dim = std::size_t{1} << op.n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& t : op.terms) {
    cplx base = t.coeff * ipow[std::popcount(t.x & t.z) & 3];
    for (std::uint64_t b = 0; b < dim; ++b) {
      cplx ph = (std::popcount(b & t.z) & 1) ? -base : base;
      m(static_cast<Eigen::Index>(b ^ t.x), static_cast<Eigen::Index>(b)) += ph;
    }
  }
  return m;
}

std::vector<EigenPair> lowest_eigenpairs(const SpectrumRequest& req) {
  if (!req.op.is_hermitian()) {
    throw std::invalid_argument("spectrum request needs a Hermitian operator");
  }
  if (req.k < 1 || (std::size_t{1} << req.op.n_qubits) < static_cast<std::size_t>(req.k)) {
    throw std::invalid_argument("invalid eigenpair count");
  }
  if (req.mode == SpectrumMode::dense && req.op.n_qubits > kDenseQubitCap) {
    throw std::invalid_argument("dense mode capped at 12 qubits");
  }
  if (req.mode == SpectrumMode::iterative && req.op.n_qubits > kIterativeQubitCap) {
    throw std::invalid_argument("iterative mode capped at 20 qubits");
  }
  PauliSum op = simplify(req.op);
  std::vector<EigenPair> pairs = (req.mode == SpectrumMode::dense)
                                     ? dense_eigenpairs(op, req.k)
                                     : lanczos_eigenpairs(op, req.k);
  for (const auto& p : pairs) {
    double r = residual_norm(op, p);
    if (r > kResidualCap) {
      throw std::runtime_error("eigenpair residual " + std::to_string(r) +
                               " exceeds 1e-8");
    }
  }
  return pairs;
}

double ground_energy_spin(const Lattice& lattice, const Couplings& c) {
  PauliSum h = spin_hamiltonian(lattice, c);
  SpectrumRequest req;
  req.op = h;
  req.k = 1;
  req.mode = h.n_qubits <= kDenseQubitCap ? SpectrumMode::dense : SpectrumMode::iterative;
  return lowest_eigenpairs(req)[0].value;
}

}  // namespace kitaev
