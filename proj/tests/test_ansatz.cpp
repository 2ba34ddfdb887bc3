#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kitaev/ansatz.hpp"
#include "kitaev/hamiltonians.hpp"
#include "kitaev/statevector.hpp"

using namespace kitaev;

namespace {

int expected_fixed_params(int n_spins, bool quartic) {
  int n = n_spins / 2;
  int quad = n * (n - 1);
  if (!quartic) {
    return quad;
  }
  int c4 = n * (n - 1) * (n - 2) * (n - 3) / 24;
  return quad + 2 * c4;
}

std::vector<double> random_theta(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> d(-0.5, 0.5);
  std::vector<double> t(n);
  for (auto& v : t) {
    v = d(rng);
  }
  return t;
}

}  // namespace

TEST_CASE("fixed-gauge parameter counts") {
  // N/2 (N/2 - 1) quadratic parameters; quartic block adds
  // (1/4!) N (N/2-1)(N/2-2)(N/2-3).
  for (int n_spins : {8, 16, 18}) {
    Circuit quad = fixed_gauge_ansatz(n_spins, false, false);
    CHECK(quad.parameter_count == expected_fixed_params(n_spins, false));
    Circuit full = fixed_gauge_ansatz(n_spins, true, false);
    CHECK(full.parameter_count == expected_fixed_params(n_spins, true));
    int n = n_spins / 2;
    CHECK(full.parameter_count - quad.parameter_count ==
          n_spins * (n - 1) * (n - 2) * (n - 3) / 24);
  }
  CHECK(fixed_gauge_ansatz(18, true, false).parameter_count == 324);
  CHECK_THROWS(fixed_gauge_ansatz(3, false, false));
  CHECK_THROWS(fixed_gauge_ansatz(2, false, false));
}

TEST_CASE("dynamical parameter counts") {
  for (auto [kind, l1, l2] : {std::tuple{LatticeKind::square_octagon, 1, 1},
                              std::tuple{LatticeKind::honeycomb, 2, 1}}) {
    Lattice lat = build_lattice(kind, l1, l2);
    int n_spins = lat.n_sites();
    Circuit c = dynamical_gauge_ansatz(lat);
    CHECK(c.parameter_count == 2 * n_spins * (2 * n_spins - 1));
    // Gauge-gauge block: (3N/2)(3N/2 - 1) parameters.
    int n_edges = lat.n_edges();
    int gauge_pairs = n_edges * (n_edges - 1);
    int matter = (n_spins / 2) * (n_spins / 2 - 1);
    int mixed = 2 * (n_spins / 2) * n_edges;
    CHECK(c.parameter_count == matter + gauge_pairs + mixed);
  }
}

TEST_CASE("generator structure") {
  Circuit c = fixed_gauge_ansatz(8, true, false);
  for (const auto& gate : c.gates) {
    std::size_t n_terms = gate.generator.size();
    CHECK((n_terms == 2 || n_terms == 8));
    for (const auto& t : gate.generator.terms) {
      CHECK(std::abs(t.coeff.imag()) < 1e-14);
    }
    CHECK(gate.generator.is_hermitian());
  }
  // Parameter indices are contiguous.
  std::vector<bool> seen(c.parameter_count, false);
  for (const auto& gate : c.gates) {
    seen[gate.param_index] = true;
  }
  for (bool s : seen) {
    CHECK(s);
  }
}

TEST_CASE("identity at zero parameters") {
  Circuit c = fixed_gauge_ansatz(8, true, false);
  State psi = zero_state(c.n_qubits);
  std::vector<double> theta(c.parameter_count, 0.0);
  apply_circuit(c, theta, psi);
  CHECK(std::abs(psi.amps[0] - cplx(1.0, 0.0)) < 1e-12);

  Lattice lat = build_lattice(LatticeKind::square_octagon, 1, 1);
  Circuit d = dynamical_gauge_ansatz(lat);
  State phi = zero_state(d.n_qubits);
  std::vector<double> theta_d(d.parameter_count, 0.0);
  apply_circuit(d, theta_d, phi);
  CHECK(std::abs(phi.amps[0] - cplx(1.0, 0.0)) < 1e-12);
  // All gauge variables stay +1 on the reference state.
  for (int e = 0; e < lat.n_edges(); ++e) {
    PauliSum u = PauliSum::from_string(gauge_z(e, 4, d.n_qubits));
    CHECK(expectation(u, phi) == doctest::Approx(1.0));
  }

  std::vector<double> wrong(d.parameter_count + 1, 0.0);
  CHECK_THROWS(apply_circuit(d, wrong, phi));
}

TEST_CASE("norm preservation and parity structure") {
  std::mt19937_64 rng(3);
  Circuit even = fixed_gauge_ansatz(8, true, false);
  State psi = zero_state(even.n_qubits);
  apply_circuit(even, random_theta(rng, even.parameter_count), psi);
  CHECK(std::abs(psi.norm() - 1.0) < 1e-10);

  // Total fermion parity of |0> is preserved without the particle-hole
  // prefix and flipped with it.
  PauliSum parity(4);
  parity += PauliString::from_word("ZZZZ");
  CHECK(expectation(parity, psi) == doctest::Approx(1.0).epsilon(1e-10));

  Circuit odd = fixed_gauge_ansatz(8, true, true);
  State chi = zero_state(odd.n_qubits);
  apply_circuit(odd, random_theta(rng, odd.parameter_count), chi);
  CHECK(expectation(parity, chi) == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("dropped number-conserving generators act trivially on the vacuum") {
  // exp applied to |0> leaves it exactly invariant for number-conserving
  // pair generators, at any angle.
  const std::uint32_t nq = 4;
  for (auto [p, q] : {std::pair{0u, 2u}, std::pair{1u, 3u}}) {
    PauliSum hop = simplify(add(multiply(jw_mode_raise(p, nq, false), jw_mode_lower(q, nq, false)),
                                multiply(jw_mode_raise(q, nq, false), jw_mode_lower(p, nq, false))));
    State psi = zero_state(nq);
    for (const auto& t : hop.terms) {
      apply_rotation(psi, PauliString(1.0, nq, t.x, t.z), 0.37 * t.coeff.real());
    }
    CHECK(std::abs(psi.amps[0] - cplx(1.0, 0.0)) < 1e-12);
  }
}

TEST_CASE("circuit printing") {
  Circuit c = fixed_gauge_ansatz(8, false, true);
  std::string s = c.to_string();
  CHECK(s.find("fixed * XIII") != std::string::npos);
  CHECK(s.find("theta[0]") != std::string::npos);
}
