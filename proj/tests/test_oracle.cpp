#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kitaev/freefermion.hpp"
#include "kitaev/oracle.hpp"

using namespace kitaev;

namespace {

const Couplings kSoCouplings{{1.0, 1.0, 1.4142135623730951}, 0.0, 0.0, {0, 0, 0}};

}  // namespace

TEST_CASE("single qubit Z") {
  SpectrumRequest req;
  req.op = PauliSum::from_string(PauliString::from_word("Z"));
  req.k = 2;
  req.mode = SpectrumMode::dense;
  auto pairs = lowest_eigenpairs(req);
  CHECK(pairs[0].value == doctest::Approx(-1.0));
  CHECK(pairs[1].value == doctest::Approx(1.0));
}

TEST_CASE("dense and iterative solvers agree") {
  Lattice lat = build_lattice(LatticeKind::square_octagon, 2, 1);
  Couplings c = kSoCouplings;
  c.h = {0.15, 0.1, 0.25};
  PauliSum h = spin_hamiltonian(lat, c);  // 8 qubits

  SpectrumRequest dense_req{h, 3, SpectrumMode::dense};
  SpectrumRequest iter_req{h, 3, SpectrumMode::iterative};
  auto dense_pairs = lowest_eigenpairs(dense_req);
  auto iter_pairs = lowest_eigenpairs(iter_req);
  for (int i = 0; i < 3; ++i) {
    CHECK(dense_pairs[i].value == doctest::Approx(iter_pairs[i].value).epsilon(1e-8));
  }
}

TEST_CASE("eigenvalue expectation agrees with the statevector engine") {
  Lattice lat = build_lattice(LatticeKind::honeycomb, 2, 2);
  GaugeConfig g = standard_gauge(lat);
  Couplings c;
  c.kappa = 0.1;
  PauliSum h = fixed_gauge_hamiltonian(lat, g, c);
  SpectrumRequest req{h, 2, SpectrumMode::dense};
  auto pairs = lowest_eigenpairs(req);
  for (const auto& p : pairs) {
    CHECK(expectation(h, p.vector) == doctest::Approx(p.value).epsilon(1e-10));
  }
}

TEST_CASE("fixed-gauge ground equals the quadratic solution") {
  Lattice lat = build_lattice(LatticeKind::honeycomb, 2, 2);
  GaugeConfig g = standard_gauge(lat);
  Couplings c;
  SpectrumRequest req{fixed_gauge_hamiltonian(lat, g, c), 1, SpectrumMode::dense};
  double ed = lowest_eigenpairs(req)[0].value;
  double e0 = ground_energy(canonical_form(build_K(lat, g, c).K));
  CHECK(ed == doctest::Approx(e0).epsilon(1e-10));
}

TEST_CASE("polarized limit of the spin model") {
  Lattice lat = build_lattice(LatticeKind::square_octagon, 1, 1);
  Couplings c = kSoCouplings;
  c.h = {0.0, 0.0, 60.0};
  double e = ground_energy_spin(lat, c);
  // E -> -N h_z + O(1)
  CHECK(e >= -4 * 60.0 - 8.0);
  CHECK(e <= -4 * 60.0 + 8.0);
}

TEST_CASE("two-vortex interacting gap narrows with kappa_int") {
  // 9-qubit fixed-gauge problem on the two-vortex 3x3 honeycomb, with the
  // vortices maximally separated.
  Lattice lat = build_lattice(LatticeKind::honeycomb, 3, 3);
  GaugeConfig v = insert_vortex_pair(lat, standard_gauge(lat), 0, 4);
  auto gap_at = [&](double kappa, double kint) {
    Couplings c;
    c.kappa = kappa;
    c.kappa_int = kint;
    SpectrumRequest req{fixed_gauge_hamiltonian(lat, v, c), 2, SpectrumMode::dense};
    auto pairs = lowest_eigenpairs(req);
    return pairs[1].value - pairs[0].value;
  };
  double g0 = gap_at(0.4, 0.0);
  double gi = gap_at(0.4, 0.1);
  CHECK(gi < g0);
  // The quadratic route agrees with ED at kappa_int = 0.
  Couplings c;
  c.kappa = 0.4;
  CHECK(g0 ==
        doctest::Approx(parity_splitting(canonical_form(build_K(lat, v, c).K))).epsilon(1e-9));
}

TEST_CASE("iterative solver on a larger register") {
  // 10-qubit operator exercised matrix-free.
  Lattice lat = build_lattice(LatticeKind::square_octagon, 1, 1);
  Couplings c = kSoCouplings;
  c.h = {0.1, 0.1, 0.1};
  PauliSum h = dynamical_gauge_hamiltonian(lat, c);  // 8 qubits
  SpectrumRequest req{h, 1, SpectrumMode::iterative};
  auto pairs = lowest_eigenpairs(req);
  SpectrumRequest dreq{h, 1, SpectrumMode::dense};
  CHECK(pairs[0].value == doctest::Approx(lowest_eigenpairs(dreq)[0].value).epsilon(1e-8));
}

TEST_CASE("caps and validation") {
  SpectrumRequest req;
  req.op = PauliSum::from_string(PauliString::from_word("X", cplx(0.0, 1.0)));
  req.k = 1;
  CHECK_THROWS(lowest_eigenpairs(req));  // non-Hermitian

  PauliSum big(13);
  big += PauliString::single(13, 0, 'Z');
  SpectrumRequest dense_big{big, 1, SpectrumMode::dense};
  CHECK_THROWS(lowest_eigenpairs(dense_big));
}
