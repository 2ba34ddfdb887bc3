#pragma once

#include <Eigen/Dense>
#include <vector>

#include "kitaev/hamiltonians.hpp"
#include "kitaev/lattice.hpp"

namespace kitaev {

// H = (i/2) sum_ij K_ij c_i c_j with K real antisymmetric; Majorana index
// ordering follows Lattice::majorana_index.
struct QuadraticProblem {
  Eigen::MatrixXd K;
};

// R K R^T = blockdiag([[0, eps_n], [-eps_n, 0]]) with eps_n >= 0 descending.
struct CanonicalForm {
  Eigen::MatrixXd R;
  std::vector<double> eps;
  double det_r = 1.0;
};

// kappa_int is ignored (it is not quadratic); h must be zero by construction
// of the fixed-gauge problem.
QuadraticProblem build_K(const Lattice& lattice, const GaugeConfig& gauge,
                         const Couplings& c);

CanonicalForm canonical_form(const Eigen::MatrixXd& K);

double ground_energy(const CanonicalForm& cf);

// 2 * min_n eps_n; exactly 0 when a zero mode is present.
double parity_splitting(const CanonicalForm& cf);

}  // namespace kitaev
