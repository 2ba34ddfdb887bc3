#include "kitaev/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <map>
#include <stdexcept>

namespace kitaev {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

struct CellVec {
  double x, y;
};

int mod(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

const char* to_string(LatticeKind k) {
  return k == LatticeKind::honeycomb ? "honeycomb" : "square-octagon";
}

const char* to_string(EdgeType t) {
  switch (t) {
    case EdgeType::x: return "x";
    case EdgeType::y: return "y";
    default: return "z";
  }
}

const char* to_string(PlaquetteKind k) {
  switch (k) {
    case PlaquetteKind::hexagon: return "hexagon";
    case PlaquetteKind::square: return "square";
    default: return "octagon";
  }
}

LatticeKind lattice_kind_from_string(const std::string& s) {
  if (s == "honeycomb") return LatticeKind::honeycomb;
  if (s == "square-octagon" || s == "square_octagon") return LatticeKind::square_octagon;
  throw std::invalid_argument("unknown lattice kind: " + s);
}

int Lattice::neighbor(int site, EdgeType t) const {
  const Edge& e = edges[edge_at(site, t)];
  return e.tail == site ? e.head : e.tail;
}

std::array<double, 2> Lattice::direction_from(int site, int edge) const {
  const Edge& e = edges[edge];
  if (e.tail == site) {
    return {e.dx, e.dy};
  }
  return {-e.dx, -e.dy};
}

int Lattice::matter_pair(int site) const {
  const Site& s = sites[site];
  int cell = s.i1 * L2 + s.i2;
  if (kind == LatticeKind::honeycomb) {
    return cell;
  }
  return 2 * cell + (s.basis >= 3 ? 1 : 0);
}

int Lattice::matter_parity(int site) const { return (sites[site].basis - 1) % 2; }

namespace {

void build_honeycomb(Lattice& lat) {
  const int L1 = lat.L1, L2 = lat.L2;
  const CellVec a1{kSqrt3 / 2.0, 1.5};
  const CellVec a2{-kSqrt3 / 2.0, 1.5};
  auto cell_index = [&](int i1, int i2) { return mod(i1, L1) * L2 + mod(i2, L2); };
  auto site_index = [&](int i1, int i2, int tau) { return cell_index(i1, i2) * 2 + tau - 1; };

  for (int i1 = 0; i1 < L1; ++i1) {
    for (int i2 = 0; i2 < L2; ++i2) {
      double cx = i1 * a1.x + i2 * a2.x;
      double cy = i1 * a1.y + i2 * a2.y;
      lat.sites.push_back({i1, i2, 1, cx, cy});
      lat.sites.push_back({i1, i2, 2, cx, cy + 1.0});
    }
  }

  // Edges owned by cell r, all oriented from basis 2 to basis 1 so that the
  // standard-gauge intra-pair terms come out as -Z on the paired qubit (the
  // all-zeros state is then the paired-fermion reference vacuum):
  //   x: (r-a1,2) -> (r,1), y: (r-a2,2) -> (r,1), z: (r,2) -> (r,1).
  for (int i1 = 0; i1 < L1; ++i1) {
    for (int i2 = 0; i2 < L2; ++i2) {
      int s1 = site_index(i1, i2, 1);
      lat.edges.push_back({site_index(i1 - 1, i2, 2), s1, EdgeType::x,
                           a1.x, a1.y - 1.0});
      lat.edges.push_back({site_index(i1, i2 - 1, 2), s1, EdgeType::y,
                           a2.x, a2.y - 1.0});
      lat.edges.push_back({site_index(i1, i2, 2), s1, EdgeType::z, 0.0, -1.0});
    }
  }

  lat.plaquettes_enumerated = (L1 >= 2 && L2 >= 2);
  if (!lat.plaquettes_enumerated) {
    return;
  }
  auto edge_of_cell = [&](int i1, int i2, int t) { return cell_index(i1, i2) * 3 + t; };
  for (int i1 = 0; i1 < L1; ++i1) {
    for (int i2 = 0; i2 < L2; ++i2) {
      Plaquette p;
      p.kind = PlaquetteKind::hexagon;
      p.sites = {site_index(i1, i2, 1),          site_index(i1, i2, 2),
                 site_index(i1 + 1, i2, 1),      site_index(i1 + 1, i2 - 1, 2),
                 site_index(i1 + 1, i2 - 1, 1),  site_index(i1, i2 - 1, 2)};
      p.steps = {{edge_of_cell(i1, i2, 2), false},          // z of r
                 {edge_of_cell(i1 + 1, i2, 0), true},       // x of r+a1
                 {edge_of_cell(i1 + 1, i2, 1), false},      // y of r+a1
                 {edge_of_cell(i1 + 1, i2 - 1, 2), true},   // z of r+a1-a2
                 {edge_of_cell(i1 + 1, i2 - 1, 0), false},  // x of r+a1-a2
                 {edge_of_cell(i1, i2, 1), true}};          // y of r
      lat.plaquettes.push_back(std::move(p));
    }
  }
}

void build_square_octagon(Lattice& lat) {
  const int L1 = lat.L1, L2 = lat.L2;
  const double d = 2.0, s = 0.5;
  auto cell_index = [&](int i1, int i2) { return mod(i1, L1) * L2 + mod(i2, L2); };
  auto site_index = [&](int i1, int i2, int tau) { return cell_index(i1, i2) * 4 + tau - 1; };

  // Diamond corners: 1 bottom, 2 left, 3 top, 4 right.
  const double ox[4] = {0.0, -s, 0.0, s};
  const double oy[4] = {-s, 0.0, s, 0.0};
  for (int i1 = 0; i1 < L1; ++i1) {
    for (int i2 = 0; i2 < L2; ++i2) {
      double cx = i1 * d;
      double cy = i2 * d;
      for (int tau = 1; tau <= 4; ++tau) {
        lat.sites.push_back({i1, i2, tau, cx + ox[tau - 1], cy + oy[tau - 1]});
      }
    }
  }

  // Edge order per cell: x:(3->2), x:(4->1), y:(2->1), y:(4->3),
  // z:(4)->(r+a1,2), z:(3)->(r+a2,1). Orientations make every standard-gauge
  // flux +1 and turn the intra-pair y-edge terms into -Z on the paired qubit.
  for (int i1 = 0; i1 < L1; ++i1) {
    for (int i2 = 0; i2 < L2; ++i2) {
      lat.edges.push_back({site_index(i1, i2, 3), site_index(i1, i2, 2), EdgeType::x,
                           -s, -s});
      lat.edges.push_back({site_index(i1, i2, 4), site_index(i1, i2, 1), EdgeType::x,
                           -s, -s});
      lat.edges.push_back({site_index(i1, i2, 2), site_index(i1, i2, 1), EdgeType::y,
                           s, -s});
      lat.edges.push_back({site_index(i1, i2, 4), site_index(i1, i2, 3), EdgeType::y,
                           -s, s});
      lat.edges.push_back({site_index(i1, i2, 4), site_index(i1 + 1, i2, 2), EdgeType::z,
                           d - 2 * s, 0.0});
      lat.edges.push_back({site_index(i1, i2, 3), site_index(i1, i2 + 1, 1), EdgeType::z,
                           0.0, d - 2 * s});
    }
  }

  auto edge_of_cell = [&](int i1, int i2, int k) { return cell_index(i1, i2) * 6 + k; };
  // Squares first (index = cell), then octagons (index = n_cells + cell).
  for (int i1 = 0; i1 < L1; ++i1) {
    for (int i2 = 0; i2 < L2; ++i2) {
      Plaquette p;
      p.kind = PlaquetteKind::square;
      p.sites = {site_index(i1, i2, 1), site_index(i1, i2, 2), site_index(i1, i2, 3),
                 site_index(i1, i2, 4)};
      p.steps = {{edge_of_cell(i1, i2, 2), false},
                 {edge_of_cell(i1, i2, 0), false},
                 {edge_of_cell(i1, i2, 3), false},
                 {edge_of_cell(i1, i2, 1), true}};
      lat.plaquettes.push_back(std::move(p));
    }
  }
  for (int i1 = 0; i1 < L1; ++i1) {
    for (int i2 = 0; i2 < L2; ++i2) {
      Plaquette p;
      p.kind = PlaquetteKind::octagon;
      p.sites = {site_index(i1, i2, 3),         site_index(i1, i2, 4),
                 site_index(i1 + 1, i2, 2),     site_index(i1 + 1, i2, 3),
                 site_index(i1 + 1, i2 + 1, 1), site_index(i1 + 1, i2 + 1, 2),
                 site_index(i1, i2 + 1, 4),     site_index(i1, i2 + 1, 1)};
      p.steps = {{edge_of_cell(i1, i2, 3), false},         // y (4->3) of r
                 {edge_of_cell(i1, i2, 4), true},          // z (4->2) of r
                 {edge_of_cell(i1 + 1, i2, 0), false},     // x (3->2) of r+a1
                 {edge_of_cell(i1 + 1, i2, 5), true},      // z (3->1) of r+a1
                 {edge_of_cell(i1 + 1, i2 + 1, 2), false}, // y (2->1) of r+a1+a2
                 {edge_of_cell(i1, i2 + 1, 4), false},     // z (4->2) of r+a2
                 {edge_of_cell(i1, i2 + 1, 1), true},      // x (4->1) of r+a2
                 {edge_of_cell(i1, i2, 5), false}};        // z (3->1) of r
      lat.plaquettes.push_back(std::move(p));
    }
  }
}

}  // namespace

namespace {

// Sign of the product of all constraint operators D_i = b^x b^y b^z c on the
// all-zeros reference state, computed combinatorially. Each Majorana is a
// Jordan-Wigner position 2*mode + component; the product of all of them in
// canonical order evaluates to i^{2N} on |0...0>, tail-site bond Majoranas
// carry a minus sign, and reordering contributes the permutation parity.
int constraint_sign(const Lattice& lat) {
  const int n_matter = lat.n_sites() / 2;
  std::vector<int> seq;
  seq.reserve(4 * lat.n_sites());
  int minus = 0;
  for (int site = 0; site < lat.n_sites(); ++site) {
    for (int t = 0; t < 3; ++t) {
      int e = lat.site_edges[site][t];
      int comp = lat.edges[e].head == site ? 0 : 1;  // head: b1, tail: -b2
      if (comp == 1) {
        ++minus;
      }
      seq.push_back(2 * (n_matter + e) + comp);
    }
    seq.push_back(2 * lat.matter_pair(site) + lat.matter_parity(site));
  }
  int inversions = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] > seq[j]) {
        ++inversions;
      }
    }
  }
  int i_pow = (2 * lat.n_sites()) % 4 == 0 ? 1 : -1;  // i^(#modes)
  int sign = i_pow;
  if (minus % 2 == 1) {
    sign = -sign;
  }
  if (inversions % 2 == 1) {
    sign = -sign;
  }
  return sign;
}

// Reverse the orientation of the three edges at `site` (flux preserving;
// flips the constraint sign).
void flip_site_star(Lattice& lat, int site) {
  std::array<int, 3> flipped = lat.site_edges[site];
  for (int e : flipped) {
    Edge& edge = lat.edges[e];
    std::swap(edge.tail, edge.head);
    edge.dx = -edge.dx;
    edge.dy = -edge.dy;
  }
  for (auto& p : lat.plaquettes) {
    for (auto& step : p.steps) {
      for (int e : flipped) {
        if (step.edge == e) {
          step.along = !step.along;
        }
      }
    }
  }
}

}  // namespace

Lattice build_lattice(LatticeKind kind, int L1, int L2) {
  if (L1 < 1 || L2 < 1) {
    throw std::invalid_argument("lattice dimensions must be positive");
  }
  if (kind == LatticeKind::honeycomb && L1 == 1 && L2 == 1) {
    throw std::invalid_argument(
        "honeycomb 1x1 is rejected: plaquette cycles would revisit edges");
  }
  Lattice lat;
  lat.kind = kind;
  lat.L1 = L1;
  lat.L2 = L2;
  if (kind == LatticeKind::honeycomb) {
    build_honeycomb(lat);
  } else {
    build_square_octagon(lat);
  }

  lat.site_edges.assign(lat.sites.size(), {-1, -1, -1});
  for (int e = 0; e < lat.n_edges(); ++e) {
    const Edge& edge = lat.edges[e];
    int t = static_cast<int>(edge.type);
    for (int site : {edge.tail, edge.head}) {
      if (lat.site_edges[site][t] != -1) {
        throw std::logic_error("site has two incident edges of one type");
      }
      lat.site_edges[site][t] = e;
    }
  }
  for (const auto& se : lat.site_edges) {
    if (se[0] < 0 || se[1] < 0 || se[2] < 0) {
      throw std::logic_error("trivalence violated");
    }
  }

  // Orient so that the all-zeros reference state satisfies the global
  // constraint (prod_i D_i = +1); otherwise it would have no physical
  // component at all.
  if (constraint_sign(lat) == -1) {
    flip_site_star(lat, 0);
  }
  if (constraint_sign(lat) != 1) {
    throw std::logic_error("orientation fix-up failed to set the constraint sign");
  }
  return lat;
}

GaugeConfig standard_gauge(const Lattice& lattice) {
  GaugeConfig g;
  g.u.assign(lattice.n_edges(), 1);
  return g;
}

int gauge_value(const Lattice& lattice, const GaugeConfig& gauge, int edge, int from_site) {
  const Edge& e = lattice.edges[edge];
  if (e.tail == from_site) {
    return gauge.u[edge];
  }
  if (e.head == from_site) {
    return -gauge.u[edge];
  }
  throw std::invalid_argument("site is not an endpoint of the edge");
}

int plaquette_flux(const Lattice& lattice, const GaugeConfig& gauge, int p) {
  if (p < 0 || p >= lattice.n_plaquettes()) {
    throw std::out_of_range("plaquette index out of range");
  }
  if (!lattice.plaquettes_enumerated) {
    throw std::invalid_argument("plaquettes are not enumerated for this lattice");
  }
  int prod = 1;
  for (const auto& step : lattice.plaquettes[p].steps) {
    prod *= step.along ? gauge.u[step.edge] : -gauge.u[step.edge];
  }
  return -prod;
}

GaugeConfig gauge_transform(const Lattice& lattice, const GaugeConfig& gauge, int site) {
  GaugeConfig out = gauge;
  for (int t = 0; t < 3; ++t) {
    int e = lattice.site_edges[site][t];
    out.u[e] = -out.u[e];
  }
  return out;
}

GaugeConfig insert_vortex_pair(const Lattice& lattice, const GaugeConfig& gauge, int p_a,
                               int p_b) {
  if (p_a == p_b) {
    throw std::invalid_argument("vortex pair needs two distinct plaquettes");
  }
  if (p_a < 0 || p_b < 0 || p_a >= lattice.n_plaquettes() || p_b >= lattice.n_plaquettes()) {
    throw std::out_of_range("plaquette index out of range");
  }
  // Edge -> (plaquette, multiplicity in its boundary walk). Flipping an edge
  // toggles only fluxes where it has odd multiplicity.
  std::map<std::pair<int, int>, int> mult;
  for (int p = 0; p < lattice.n_plaquettes(); ++p) {
    for (const auto& step : lattice.plaquettes[p].steps) {
      mult[{step.edge, p}]++;
    }
  }
  std::vector<std::vector<std::pair<int, int>>> touching(lattice.n_edges());
  for (const auto& [key, m] : mult) {
    if (m % 2 == 1) {
      touching[key.first].push_back({key.second, m});
    }
  }
  // Dual adjacency: neighbor plaquette via the lowest-index shared edge.
  std::vector<std::vector<std::pair<int, int>>> adj(lattice.n_plaquettes());
  for (int e = 0; e < lattice.n_edges(); ++e) {
    if (touching[e].size() == 2) {
      int p = touching[e][0].first, q = touching[e][1].first;
      if (p != q) {
        adj[p].push_back({q, e});
        adj[q].push_back({p, e});
      }
    }
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
  }

  std::vector<int> parent_edge(lattice.n_plaquettes(), -1);
  std::vector<int> parent(lattice.n_plaquettes(), -1);
  std::vector<bool> seen(lattice.n_plaquettes(), false);
  std::deque<int> queue{p_a};
  seen[p_a] = true;
  while (!queue.empty() && !seen[p_b]) {
    int p = queue.front();
    queue.pop_front();
    for (const auto& [q, e] : adj[p]) {
      if (!seen[q]) {
        seen[q] = true;
        parent[q] = p;
        parent_edge[q] = e;
        queue.push_back(q);
      }
    }
  }
  if (!seen[p_b]) {
    throw std::runtime_error("no dual path between the requested plaquettes");
  }
  GaugeConfig out = gauge;
  for (int p = p_b; p != p_a; p = parent[p]) {
    out.u[parent_edge[p]] = -out.u[parent_edge[p]];
  }
  return out;
}

std::string to_text(const Lattice& lattice, const GaugeConfig* gauge) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "lattice\t%s\t%d\t%d\n", to_string(lattice.kind),
                lattice.L1, lattice.L2);
  out += buf;
  for (int s = 0; s < lattice.n_sites(); ++s) {
    const Site& site = lattice.sites[s];
    std::snprintf(buf, sizeof(buf), "site\t%d\t%d\t%d\t%d\t%.17g\t%.17g\n", s, site.i1,
                  site.i2, site.basis, site.px, site.py);
    out += buf;
  }
  for (int e = 0; e < lattice.n_edges(); ++e) {
    const Edge& edge = lattice.edges[e];
    std::snprintf(buf, sizeof(buf), "edge\t%d\t%d\t%d\t%s\n", e, edge.tail, edge.head,
                  to_string(edge.type));
    out += buf;
  }
  for (int p = 0; p < lattice.n_plaquettes(); ++p) {
    const Plaquette& pl = lattice.plaquettes[p];
    std::snprintf(buf, sizeof(buf), "plaquette\t%d\t%s", p, to_string(pl.kind));
    out += buf;
    for (int s : pl.sites) {
      std::snprintf(buf, sizeof(buf), "\t%d", s);
      out += buf;
    }
    out += '\n';
  }
  if (gauge) {
    for (int e = 0; e < lattice.n_edges(); ++e) {
      std::snprintf(buf, sizeof(buf), "gauge\t%d\t%+d\n", e, gauge->u[e]);
      out += buf;
    }
  }
  return out;
}

}  // namespace kitaev
