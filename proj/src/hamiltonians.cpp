#include "kitaev/hamiltonians.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace kitaev {

namespace {

constexpr double kTwoPi = 6.283185307179586;

char pauli_char(EdgeType t) {
  switch (t) {
    case EdgeType::x: return 'X';
    case EdgeType::y: return 'Y';
    default: return 'Z';
  }
}

double angle_of(const std::array<double, 2>& d) { return std::atan2(d[1], d[0]); }

// Gauge value u_{a,l} (indices in that order) for the edge joining a and l,
// i.e. the value read in the direction leaving l.
int u_value(const Lattice& lat, const GaugeConfig& g, int l, int edge) {
  return gauge_value(lat, g, edge, l);
}

// Sign of the gauge-qubit Z realizing u_{a,l}: +Z when a is the head of the
// oriented edge.
int u_operator_sign(const Lattice& lat, int a, int edge) {
  return lat.edges[edge].head == a ? 1 : -1;
}

bool cyclic_xyz(int a, int b, int c) { return (a + 1) % 3 == b && (b + 1) % 3 == c; }

}  // namespace

TripleSet build_triples(const Lattice& lattice) {
  TripleSet triples;
  triples.reserve(lattice.n_sites());
  for (int l = 0; l < lattice.n_sites(); ++l) {
    Triple t;
    t.l = l;
    t.i = lattice.neighbor(l, EdgeType::x);
    t.j = lattice.neighbor(l, EdgeType::y);
    t.k = lattice.neighbor(l, EdgeType::z);
    double ax = angle_of(lattice.direction_from(l, lattice.edge_at(l, EdgeType::x)));
    double ay = angle_of(lattice.direction_from(l, lattice.edge_at(l, EdgeType::y)));
    double az = angle_of(lattice.direction_from(l, lattice.edge_at(l, EdgeType::z)));
    double dy = std::fmod(ay - ax + kTwoPi, kTwoPi);
    double dz = std::fmod(az - ax + kTwoPi, kTwoPi);
    t.n = dy < dz ? 1 : -1;
    triples.push_back(t);
  }
  return triples;
}

PauliSum spin_hamiltonian(const Lattice& lattice, const Couplings& c) {
  const std::uint32_t nq = static_cast<std::uint32_t>(lattice.n_sites());
  PauliSum h(nq);

  for (const Edge& e : lattice.edges) {
    char p = pauli_char(e.type);
    double J = c.J[static_cast<int>(e.type)];
    if (J == 0.0) continue;
    PauliString term = multiply(PauliString::single(nq, e.tail, p),
                                PauliString::single(nq, e.head, p));
    term.coeff *= -J;
    h += term;
  }

  if (c.kappa != 0.0 || c.kappa_int != 0.0) {
    for (const Triple& t : build_triples(lattice)) {
      auto sss = [&](int a, char pa, int b, char pb, int d, char pd) {
        PauliString s = multiply(multiply(PauliString::single(nq, a, pa),
                                          PauliString::single(nq, b, pb)),
                                 PauliString::single(nq, d, pd));
        return s;
      };
      if (c.kappa != 0.0) {
        double w = -t.n * c.kappa;
        PauliString s1 = sss(t.i, 'X', t.j, 'Y', t.l, 'Z');
        PauliString s2 = sss(t.i, 'X', t.l, 'Y', t.k, 'Z');
        PauliString s3 = sss(t.l, 'X', t.j, 'Y', t.k, 'Z');
        s1.coeff *= w;
        s2.coeff *= w;
        s3.coeff *= w;
        h += s1;
        h += s2;
        h += s3;
      }
      if (c.kappa_int != 0.0) {
        PauliString s4 = sss(t.i, 'X', t.j, 'Y', t.k, 'Z');
        s4.coeff *= -t.n * c.kappa_int;
        h += s4;
      }
    }
  }

  for (int site = 0; site < lattice.n_sites(); ++site) {
    const char paulis[3] = {'X', 'Y', 'Z'};
    for (int a = 0; a < 3; ++a) {
      if (c.h[a] != 0.0) {
        h += PauliString::single(nq, site, paulis[a], -c.h[a]);
      }
    }
  }
  return simplify(h);
}

namespace {

PauliString matter_c(const Lattice& lat, int site, std::uint32_t nq) {
  return jw_matter(static_cast<std::uint32_t>(lat.matter_pair(site)),
                   lat.matter_parity(site), nq);
}

// i c_a c_b with a given prefactor.
PauliString hop_term(const Lattice& lat, int a, int b, double w, std::uint32_t nq) {
  PauliString t = multiply(matter_c(lat, a, nq), matter_c(lat, b, nq));
  t.coeff *= cplx(0.0, 1.0) * w;
  return t;
}

PauliString quartic_term(const Lattice& lat, int i, int j, int k, int l, double w,
                         std::uint32_t nq) {
  PauliString t = multiply(multiply(matter_c(lat, i, nq), matter_c(lat, j, nq)),
                           multiply(matter_c(lat, k, nq), matter_c(lat, l, nq)));
  t.coeff *= w;
  return t;
}

}  // namespace

PauliSum fixed_gauge_hamiltonian(const Lattice& lattice, const GaugeConfig& gauge,
                                 const Couplings& c) {
  if (c.has_field()) {
    throw std::invalid_argument(
        "fixed-gauge Hamiltonian requires h=0 (a field mixes gauge sectors)");
  }
  const std::uint32_t nq = static_cast<std::uint32_t>(lattice.n_matter_qubits());
  PauliSum h(nq);

  for (int e = 0; e < lattice.n_edges(); ++e) {
    const Edge& edge = lattice.edges[e];
    double J = c.J[static_cast<int>(edge.type)];
    if (J == 0.0) continue;
    // J u_{head,tail} i c_head c_tail
    h += hop_term(lattice, edge.head, edge.tail, J * gauge.u[e], nq);
  }

  if (c.kappa != 0.0 || c.kappa_int != 0.0) {
    for (const Triple& t : build_triples(lattice)) {
      int e_il = lattice.edge_at(t.l, EdgeType::x);
      int e_jl = lattice.edge_at(t.l, EdgeType::y);
      int e_kl = lattice.edge_at(t.l, EdgeType::z);
      int u_il = u_value(lattice, gauge, t.l, e_il);
      int u_jl = u_value(lattice, gauge, t.l, e_jl);
      int u_kl = u_value(lattice, gauge, t.l, e_kl);
      if (c.kappa != 0.0) {
        // Directed second-neighbor hops i->j->k->i through l.
        h += hop_term(lattice, t.i, t.j, t.n * c.kappa * u_il * u_jl, nq);
        h += hop_term(lattice, t.j, t.k, t.n * c.kappa * u_jl * u_kl, nq);
        h += hop_term(lattice, t.k, t.i, t.n * c.kappa * u_kl * u_il, nq);
      }
      if (c.kappa_int != 0.0) {
        h += quartic_term(lattice, t.i, t.j, t.k, t.l,
                          t.n * c.kappa_int * u_il * u_jl * u_kl, nq);
      }
    }
  }
  return simplify(h);
}

PauliString matter_majorana(const Lattice& lattice, int site, std::uint32_t n_qubits) {
  return matter_c(lattice, site, n_qubits);
}

PauliString bond_majorana(const Lattice& lattice, int site, EdgeType alpha,
                          std::uint32_t n_qubits) {
  int e = lattice.edge_at(site, alpha);
  const Edge& edge = lattice.edges[e];
  const std::uint32_t n_spins = static_cast<std::uint32_t>(lattice.n_sites());
  // The pair (b^1, b^2) of edge nu is anchored on its oriented (head, tail)
  // order: b_head = b^1, b_tail = -b^2.
  if (site == edge.head) {
    return jw_bond(static_cast<std::uint32_t>(e), 1, n_spins, n_qubits);
  }
  PauliString b2 = jw_bond(static_cast<std::uint32_t>(e), 2, n_spins, n_qubits);
  b2.coeff *= -1.0;
  return b2;
}

PauliString d_operator(const Lattice& lattice, int site) {
  const std::uint32_t nq = static_cast<std::uint32_t>(2 * lattice.n_sites());
  PauliString d = multiply(
      multiply(bond_majorana(lattice, site, EdgeType::x, nq),
               bond_majorana(lattice, site, EdgeType::y, nq)),
      multiply(bond_majorana(lattice, site, EdgeType::z, nq), matter_c(lattice, site, nq)));
  return d;
}

PauliString site_pauli_dynamical(const Lattice& lattice, int site, EdgeType alpha) {
  const std::uint32_t nq = static_cast<std::uint32_t>(2 * lattice.n_sites());
  PauliString s = multiply(bond_majorana(lattice, site, alpha, nq),
                           matter_c(lattice, site, nq));
  s.coeff *= cplx(0.0, 1.0);
  return s;
}

PauliSum dynamical_gauge_hamiltonian(const Lattice& lattice, const Couplings& c) {
  const int n_spins = lattice.n_sites();
  if (n_spins > kProjectorSpinCap) {
    throw std::invalid_argument("dynamical-gauge builder capped at " +
                                std::to_string(kProjectorSpinCap) + " spins");
  }
  const std::uint32_t nq = static_cast<std::uint32_t>(2 * n_spins);
  const std::uint32_t n_spins_u = static_cast<std::uint32_t>(n_spins);
  PauliSum h(nq);

  for (int e = 0; e < lattice.n_edges(); ++e) {
    const Edge& edge = lattice.edges[e];
    double J = c.J[static_cast<int>(edge.type)];
    if (J == 0.0) continue;
    // J * u_hat_{head,tail} * i c_head c_tail, with u_hat = Z on the gauge qubit.
    PauliString t = hop_term(lattice, edge.head, edge.tail, J, nq);
    t = multiply(t, gauge_z(static_cast<std::uint32_t>(e), n_spins_u, nq));
    h += t;
  }

  if (c.kappa != 0.0 || c.kappa_int != 0.0) {
    for (const Triple& t : build_triples(lattice)) {
      int e_il = lattice.edge_at(t.l, EdgeType::x);
      int e_jl = lattice.edge_at(t.l, EdgeType::y);
      int e_kl = lattice.edge_at(t.l, EdgeType::z);
      auto u_op = [&](int a, int e) {
        PauliString zs = gauge_z(static_cast<std::uint32_t>(e), n_spins_u, nq);
        zs.coeff *= u_operator_sign(lattice, a, e);
        return zs;
      };
      if (c.kappa != 0.0) {
        struct Hop { int a, b, ea, eb; };
        for (const Hop& hop : {Hop{t.i, t.j, e_il, e_jl}, Hop{t.j, t.k, e_jl, e_kl},
                               Hop{t.k, t.i, e_kl, e_il}}) {
          PauliString term = hop_term(lattice, hop.a, hop.b, t.n * c.kappa, nq);
          term = multiply(term, multiply(u_op(hop.a, hop.ea), u_op(hop.b, hop.eb)));
          h += term;
        }
      }
      if (c.kappa_int != 0.0) {
        PauliString term = quartic_term(lattice, t.i, t.j, t.k, t.l, t.n * c.kappa_int, nq);
        term = multiply(term, multiply(multiply(u_op(t.i, e_il), u_op(t.j, e_jl)),
                                       u_op(t.k, e_kl)));
        h += term;
      }
    }
  }

  for (int site = 0; site < n_spins; ++site) {
    const EdgeType types[3] = {EdgeType::x, EdgeType::y, EdgeType::z};
    for (int a = 0; a < 3; ++a) {
      if (c.h[a] == 0.0) continue;
      PauliString t = site_pauli_dynamical(lattice, site, types[a]);
      t.coeff *= -c.h[a];
      h += t;
    }
  }
  return simplify(h);
}

PauliSum projector(const Lattice& lattice) {
  const int n_spins = lattice.n_sites();
  if (n_spins > kProjectorSpinCap) {
    throw std::invalid_argument("projector expansion capped at " +
                                std::to_string(kProjectorSpinCap) + " spins");
  }
  const std::uint32_t nq = static_cast<std::uint32_t>(2 * n_spins);
  PauliSum p = PauliSum::from_string(PauliString::identity(nq));
  for (int site = 0; site < n_spins; ++site) {
    PauliSum factor(nq);
    factor += PauliString::identity(nq, 0.5);
    PauliString d = d_operator(lattice, site);
    d.coeff *= 0.5;
    factor += d;
    p = multiply(p, factor);
  }
  return p;
}

PauliSum plaquette_operator_dynamical(const Lattice& lattice, int p) {
  if (p < 0 || p >= lattice.n_plaquettes()) {
    throw std::out_of_range("plaquette index out of range");
  }
  const std::uint32_t nq = static_cast<std::uint32_t>(2 * lattice.n_sites());
  const std::uint32_t n_spins = static_cast<std::uint32_t>(lattice.n_sites());
  PauliString w = PauliString::identity(nq, -1.0);
  for (const auto& step : lattice.plaquettes[p].steps) {
    PauliString zs = gauge_z(static_cast<std::uint32_t>(step.edge), n_spins, nq);
    zs.coeff *= step.along ? 1.0 : -1.0;
    w = multiply(w, zs);
  }
  return PauliSum::from_string(w);
}

DynamicalObservables observables(const Lattice& lattice) {
  DynamicalObservables obs;
  const std::uint32_t nq = static_cast<std::uint32_t>(2 * lattice.n_sites());
  PauliSum mz(nq);
  for (int site = 0; site < lattice.n_sites(); ++site) {
    PauliString t = site_pauli_dynamical(lattice, site, EdgeType::z);
    t.coeff *= 1.0 / lattice.n_sites();
    mz += t;
  }
  obs.m_z = simplify(mz);
  for (int p = 0; p < lattice.n_plaquettes(); ++p) {
    obs.w_ops.push_back(plaquette_operator_dynamical(lattice, p));
  }
  return obs;
}

PauliSum mz_spin(const Lattice& lattice) {
  const std::uint32_t nq = static_cast<std::uint32_t>(lattice.n_sites());
  PauliSum mz(nq);
  for (int site = 0; site < lattice.n_sites(); ++site) {
    mz += PauliString::single(nq, site, 'Z', 1.0 / lattice.n_sites());
  }
  return mz;
}

PauliSum plaquette_operator_spin(const Lattice& lattice, int p) {
  if (p < 0 || p >= lattice.n_plaquettes()) {
    throw std::out_of_range("plaquette index out of range");
  }
  const std::uint32_t nq = static_cast<std::uint32_t>(lattice.n_sites());
  const Plaquette& plq = lattice.plaquettes[p];
  const int n_steps = static_cast<int>(plq.steps.size());

  std::map<int, int> edge_mult;
  for (const auto& step : plq.steps) {
    edge_mult[step.edge]++;
  }
  int doubled = 0;
  for (const auto& [e, m] : edge_mult) {
    if (m == 2) {
      ++doubled;
    } else if (m != 1) {
      throw std::logic_error("plaquette walk traverses an edge more than twice");
    }
  }

  // Reduced walk: steps over odd-multiplicity edges, keyed by their start site.
  struct RStep { int from, to, edge; };
  std::map<int, RStep> by_from;
  for (int k = 0; k < n_steps; ++k) {
    if (edge_mult[plq.steps[k].edge] != 1) continue;
    int from = plq.sites[k];
    int to = plq.sites[(k + 1) % n_steps];
    if (by_from.count(from)) {
      throw std::logic_error("reduced plaquette walk is not a disjoint union of loops");
    }
    by_from[from] = {from, to, plq.steps[k].edge};
  }

  int n_loops = 0;
  int rho_product = 1;
  PauliString word = PauliString::identity(nq);
  std::map<int, RStep> remaining = by_from;
  while (!remaining.empty()) {
    ++n_loops;
    std::vector<RStep> loop;
    int start = remaining.begin()->first;
    int cur = start;
    do {
      auto it = remaining.find(cur);
      if (it == remaining.end()) {
        throw std::logic_error("reduced plaquette walk does not close");
      }
      loop.push_back(it->second);
      cur = it->second.to;
      remaining.erase(it);
    } while (cur != start);

    const int m = static_cast<int>(loop.size());
    for (int k = 0; k < m; ++k) {
      int t_prev = static_cast<int>(lattice.edges[loop[(k + m - 1) % m].edge].type);
      int t_cur = static_cast<int>(lattice.edges[loop[k].edge].type);
      int out = 3 - t_prev - t_cur;
      rho_product *= cyclic_xyz(out, t_prev, t_cur) ? 1 : -1;
      const char paulis[3] = {'X', 'Y', 'Z'};
      word = multiply(word, PauliString::single(nq, loop[k].from, paulis[out]));
    }
  }

  double overall = -1.0 * (doubled % 2 ? -1.0 : 1.0) * (n_loops % 2 ? -1.0 : 1.0) *
                   rho_product;
  word.coeff *= overall;
  if (!word.is_unit_hermitian()) {
    throw std::logic_error("plaquette operator did not reduce to a Hermitian string");
  }
  return PauliSum::from_string(word);
}

}  // namespace kitaev
