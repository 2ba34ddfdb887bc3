#include "kitaev/freefermion.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace kitaev {

namespace {

constexpr double kZeroModeTol = 1e-12;
constexpr double kBlockTol = 1e-11;

}  // namespace

QuadraticProblem build_K(const Lattice& lattice, const GaugeConfig& gauge,
                         const Couplings& c) {
  const int n = lattice.n_sites();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  auto accumulate = [&](int site_a, int site_b, double w) {
    int p = lattice.majorana_index(site_a);
    int q = lattice.majorana_index(site_b);
    K(p, q) += w;
    K(q, p) -= w;
  };

  for (int e = 0; e < lattice.n_edges(); ++e) {
    const Edge& edge = lattice.edges[e];
    double J = c.J[static_cast<int>(edge.type)];
    if (J == 0.0) continue;
    accumulate(edge.head, edge.tail, J * gauge.u[e]);
  }

  if (c.kappa != 0.0) {
    for (const Triple& t : build_triples(lattice)) {
      int u_il = gauge_value(lattice, gauge, lattice.edge_at(t.l, EdgeType::x), t.l);
      int u_jl = gauge_value(lattice, gauge, lattice.edge_at(t.l, EdgeType::y), t.l);
      int u_kl = gauge_value(lattice, gauge, lattice.edge_at(t.l, EdgeType::z), t.l);
      accumulate(t.i, t.j, t.n * c.kappa * u_il * u_jl);
      accumulate(t.j, t.k, t.n * c.kappa * u_jl * u_kl);
      accumulate(t.k, t.i, t.n * c.kappa * u_kl * u_il);
    }
  }
  return {K};
}

CanonicalForm canonical_form(const Eigen::MatrixXd& K) {
  const int n = static_cast<int>(K.rows());
  if (K.cols() != n || n % 2 != 0) {
    throw std::invalid_argument("K must be square with even dimension");
  }
  if ((K + K.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, K.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("K must be antisymmetric");
  }

  Eigen::RealSchur<Eigen::MatrixXd> schur(K);
  if (schur.info() != Eigen::Success) {
    throw std::runtime_error("real Schur decomposition did not converge");
  }
  // K = U T U^T with T skew and quasi-triangular, i.e. block diagonal.
  Eigen::MatrixXd R = schur.matrixU().transpose();
  Eigen::MatrixXd T = schur.matrixT();
  double det_r = R.determinant() > 0 ? 1.0 : -1.0;

  const double scale = std::max(1.0, K.cwiseAbs().maxCoeff());
  std::vector<std::pair<double, int>> blocks;  // (eps, row of block start in R)
  std::vector<int> singles;
  int k = 0;
  while (k < n) {
    if (k + 1 < n && std::abs(T(k + 1, k)) > kBlockTol * scale) {
      double beta = T(k, k + 1);
      if (beta < 0) {
        R.row(k).swap(R.row(k + 1));
        det_r = -det_r;
        beta = -beta;
      }
      blocks.push_back({beta, k});
      k += 2;
    } else {
      singles.push_back(k);
      k += 1;
    }
  }
  // Exact zero modes appear as 1x1 zero blocks; pair them up.
  if (singles.size() % 2 != 0) {
    throw std::runtime_error("odd number of unpaired Schur blocks");
  }
  for (std::size_t s = 0; s + 1 < singles.size(); s += 2) {
    blocks.push_back({0.0, -1});  // eps = 0, rows recorded separately below
  }

  // Assemble rows in descending-eps order; zero blocks go last.
  std::vector<int> order(blocks.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return blocks[a].first > blocks[b].first; });

  Eigen::MatrixXd R_sorted(n, n);
  CanonicalForm cf;
  int row = 0;
  std::size_t single_pos = 0;
  for (int idx : order) {
    double eps = blocks[idx].first;
    if (eps < kZeroModeTol) {
      eps = 0.0;
    }
    cf.eps.push_back(eps);
    if (blocks[idx].second >= 0) {
      R_sorted.row(row) = R.row(blocks[idx].second);
      R_sorted.row(row + 1) = R.row(blocks[idx].second + 1);
    } else {
      R_sorted.row(row) = R.row(singles[single_pos]);
      R_sorted.row(row + 1) = R.row(singles[single_pos + 1]);
      single_pos += 2;
    }
    row += 2;
  }
  cf.R = std::move(R_sorted);
  cf.det_r = det_r;
  return cf;
}

double ground_energy(const CanonicalForm& cf) {
  double e = 0.0;
  for (double eps : cf.eps) {
    e -= eps;
  }
  return e;
}

double parity_splitting(const CanonicalForm& cf) {
  if (cf.eps.empty()) {
    throw std::invalid_argument("empty canonical form");
  }
  double m = *std::min_element(cf.eps.begin(), cf.eps.end());
  return m < kZeroModeTol ? 0.0 : 2.0 * m;
}

}  // namespace kitaev
