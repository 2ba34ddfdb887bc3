#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <random>

#include "kitaev/freefermion.hpp"
#include "kitaev/oracle.hpp"

using namespace kitaev;

namespace {

// Independent route to the eps spectrum: eigenvalues of the Hermitian matrix
// iK come in +-eps pairs.
std::vector<double> eps_via_hermitian(const Eigen::MatrixXd& K) {
  Eigen::MatrixXcd herm = cplx(0.0, 1.0) * K.cast<cplx>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  std::vector<double> eps;
  for (int i = static_cast<int>(K.rows()) / 2; i < K.rows(); ++i) {
    eps.push_back(es.eigenvalues()(i));
  }
  std::sort(eps.begin(), eps.end(), std::greater<double>());
  return eps;
}

Eigen::MatrixXd random_antisymmetric(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      a(i, j) = g(rng);
    }
  }
  return a - a.transpose();
}

void check_canonical(const Eigen::MatrixXd& K, const CanonicalForm& cf) {
  const int n = static_cast<int>(K.rows());
  REQUIRE(static_cast<int>(cf.eps.size()) == n / 2);
  CHECK((cf.R * cf.R.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <
        1e-10);
  Eigen::MatrixXd block = cf.R * K * cf.R.transpose();
  for (int b = 0; b < n / 2; ++b) {
    block(2 * b, 2 * b + 1) -= cf.eps[b];
    block(2 * b + 1, 2 * b) += cf.eps[b];
  }
  CHECK(block.cwiseAbs().maxCoeff() < 1e-9 * std::max(1.0, K.cwiseAbs().maxCoeff()));
  for (std::size_t b = 1; b < cf.eps.size(); ++b) {
    CHECK(cf.eps[b - 1] >= cf.eps[b]);
    CHECK(cf.eps[b] >= 0.0);
  }
  CHECK(std::abs(std::abs(cf.det_r) - 1.0) < 1e-12);
  CHECK(cf.det_r == doctest::Approx(cf.R.determinant()).epsilon(1e-8));
}

}  // namespace

TEST_CASE("2x2 blocks") {
  Eigen::MatrixXd k(2, 2);
  k << 0, 1, -1, 0;
  CanonicalForm cf = canonical_form(k);
  CHECK(cf.eps[0] == doctest::Approx(1.0));
  CHECK(cf.det_r == doctest::Approx(1.0));

  Eigen::MatrixXd km(2, 2);
  km << 0, -1, 1, 0;
  CanonicalForm cfm = canonical_form(km);
  CHECK(cfm.eps[0] == doctest::Approx(1.0));
  CHECK(cfm.det_r == doctest::Approx(-1.0));
  check_canonical(km, cfm);

  CHECK_THROWS(canonical_form(Eigen::MatrixXd::Ones(2, 2)));
  CHECK_THROWS(canonical_form(Eigen::MatrixXd::Zero(3, 3)));
}

TEST_CASE("random antisymmetric matrices up to 40x40") {
  std::mt19937_64 rng(2024);
  for (int n : {4, 10, 16, 40}) {
    for (int trial = 0; trial < 3; ++trial) {
      Eigen::MatrixXd K = random_antisymmetric(rng, n);
      CanonicalForm cf = canonical_form(K);
      check_canonical(K, cf);
      auto ref = eps_via_hermitian(K);
      for (int i = 0; i < n / 2; ++i) {
        CHECK(cf.eps[i] == doctest::Approx(ref[i]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("degenerate spectra and zero modes") {
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(8, 8);
  for (int b = 0; b < 3; ++b) {
    K(2 * b, 2 * b + 1) = 2.0;
    K(2 * b + 1, 2 * b) = -2.0;
  }
  // Last block exactly zero: a zero-mode pair.
  CanonicalForm cf = canonical_form(K);
  check_canonical(K, cf);
  CHECK(cf.eps[0] == doctest::Approx(2.0));
  CHECK(cf.eps[3] == 0.0);
  CHECK(parity_splitting(cf) == 0.0);
}

TEST_CASE("K matrix structure") {
  Lattice lat = build_lattice(LatticeKind::honeycomb, 2, 2);
  GaugeConfig g = standard_gauge(lat);
  Couplings c;
  QuadraticProblem qp = build_K(lat, g, c);
  CHECK((qp.K + qp.K.transpose()).cwiseAbs().maxCoeff() == 0.0);
  int nonzero = 0;
  for (int i = 0; i < qp.K.rows(); ++i) {
    for (int j = 0; j < qp.K.cols(); ++j) {
      if (qp.K(i, j) != 0.0) {
        ++nonzero;
      }
    }
  }
  CHECK(nonzero == 24);  // 12 edges, two entries each

  // A two-vortex gauge differs in exactly 2 x (flipped edges) entries.
  GaugeConfig v = insert_vortex_pair(lat, g, 0, 1);
  int flipped_edges = 0;
  for (int e = 0; e < lat.n_edges(); ++e) {
    if (v.u[e] != g.u[e]) {
      ++flipped_edges;
    }
  }
  QuadraticProblem qv = build_K(lat, v, c);
  int changed = 0;
  for (int i = 0; i < qp.K.rows(); ++i) {
    for (int j = 0; j < qp.K.cols(); ++j) {
      if (qp.K(i, j) != qv.K(i, j)) {
        ++changed;
      }
    }
  }
  CHECK(changed == 2 * flipped_edges);
}

TEST_CASE("ground energy matches exact diagonalization") {
  for (auto [kind, l1, l2] : {std::tuple{LatticeKind::honeycomb, 2, 2},
                              std::tuple{LatticeKind::square_octagon, 2, 2}}) {
    Lattice lat = build_lattice(kind, l1, l2);
    GaugeConfig g = standard_gauge(lat);
    Couplings c;
    if (kind == LatticeKind::square_octagon) {
      c.J = {1.0, 1.0, 1.4142135623730951};
    }
    c.kappa = 0.2;
    CanonicalForm cf = canonical_form(build_K(lat, g, c).K);
    SpectrumRequest req;
    req.op = fixed_gauge_hamiltonian(lat, g, c);
    req.k = 1;
    req.mode = SpectrumMode::dense;
    double ed = lowest_eigenpairs(req)[0].value;
    CHECK(ground_energy(cf) == doctest::Approx(ed).epsilon(1e-10));
  }
}

TEST_CASE("ground energy simple properties") {
  CanonicalForm cf;
  cf.eps = {2.0, 1.0};
  CHECK(ground_energy(cf) == doctest::Approx(-3.0));
  CHECK(parity_splitting(cf) == doctest::Approx(2.0));

  std::mt19937_64 rng(5);
  Eigen::MatrixXd K = random_antisymmetric(rng, 6);
  double e1 = ground_energy(canonical_form(K));
  double e2 = ground_energy(canonical_form((2.5 * K).eval()));
  CHECK(e2 == doctest::Approx(2.5 * e1).epsilon(1e-10));

  // -sum eps is monotone nonincreasing in each |J_alpha|.
  Lattice lat = build_lattice(LatticeKind::honeycomb, 3, 3);
  GaugeConfig g = standard_gauge(lat);
  double prev = 0.0;
  for (double jz : {0.5, 1.0, 1.5, 2.0}) {
    Couplings c;
    c.J = {1.0, 1.0, jz};
    double e = ground_energy(canonical_form(build_K(lat, g, c).K));
    CHECK(e <= prev + 1e-12);
    prev = e;
  }
}

TEST_CASE("gauge invariance of the spectrum") {
  Lattice lat = build_lattice(LatticeKind::honeycomb, 3, 3);
  GaugeConfig g = standard_gauge(lat);
  g = insert_vortex_pair(lat, g, 0, 5);
  Couplings c;
  c.kappa = 0.3;
  CanonicalForm base = canonical_form(build_K(lat, g, c).K);
  std::mt19937_64 rng(77);
  GaugeConfig t = g;
  for (int flips = 0; flips < 6; ++flips) {
    t = gauge_transform(lat, t, static_cast<int>(rng() % lat.n_sites()));
  }
  CanonicalForm other = canonical_form(build_K(lat, t, c).K);
  for (std::size_t i = 0; i < base.eps.size(); ++i) {
    CHECK(base.eps[i] == doctest::Approx(other.eps[i]).epsilon(1e-9));
  }
}

TEST_CASE("two-vortex splitting has an interior minimum near kappa 0.4") {
  Lattice lat = build_lattice(LatticeKind::honeycomb, 3, 3);
  GaugeConfig g = standard_gauge(lat);
  // Maximally separated hexagons on the 3x3 torus (dual distance 2).
  GaugeConfig v = insert_vortex_pair(lat, g, 0, 4);
  std::vector<double> grid, split;
  for (int i = 1; i <= 20; ++i) {
    double kappa = 0.05 * i;
    Couplings c;
    c.kappa = kappa;
    Eigen::MatrixXd K = build_K(lat, v, c).K;
    CanonicalForm cf = canonical_form(K);
    grid.push_back(kappa);
    split.push_back(parity_splitting(cf));
    // Independent eigensolver route for the same quantity.
    auto ref = eps_via_hermitian(K);
    CHECK(parity_splitting(cf) == doctest::Approx(2.0 * ref.back()).epsilon(1e-9));
  }
  auto it = std::min_element(split.begin(), split.end());
  double argmin = grid[static_cast<std::size_t>(it - split.begin())];
  CHECK(argmin >= 0.3);
  CHECK(argmin <= 0.5);
  CHECK(*it < split.front());
  CHECK(*it < split.back());
}
