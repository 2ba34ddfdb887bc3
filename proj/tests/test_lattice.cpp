#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <tuple>

#include "kitaev/lattice.hpp"

using namespace kitaev;

namespace {

int count_negative_fluxes(const Lattice& lat, const GaugeConfig& g) {
  int n = 0;
  for (int p = 0; p < lat.n_plaquettes(); ++p) {
    if (plaquette_flux(lat, g, p) == -1) {
      ++n;
    }
  }
  return n;
}

std::string read_golden(const std::string& name) {
  std::ifstream in(std::string(KITAEV_GOLDEN_DIR) + "/" + name);
  REQUIRE(in.good());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return text;
}

}  // namespace

TEST_CASE("honeycomb 3x3 counts") {
  Lattice lat = build_lattice(LatticeKind::honeycomb, 3, 3);
  CHECK(lat.n_sites() == 18);
  CHECK(lat.n_edges() == 27);
  CHECK(lat.n_plaquettes() == 9);
  for (const auto& p : lat.plaquettes) {
    CHECK(p.kind == PlaquetteKind::hexagon);
    CHECK(p.sites.size() == 6);
  }
}

TEST_CASE("square-octagon counts") {
  Lattice s1 = build_lattice(LatticeKind::square_octagon, 1, 1);
  CHECK(s1.n_sites() == 4);
  CHECK(s1.n_edges() == 6);
  CHECK(s1.n_plaquettes() == 2);

  Lattice s2 = build_lattice(LatticeKind::square_octagon, 2, 2);
  CHECK(s2.n_sites() == 16);
  CHECK(s2.n_edges() == 24);
  int squares = 0, octagons = 0;
  for (const auto& p : s2.plaquettes) {
    (p.kind == PlaquetteKind::square ? squares : octagons)++;
  }
  CHECK(squares == 4);
  CHECK(octagons == 4);
}

TEST_CASE("edge typing partitions into equal classes") {
  for (auto [kind, l1, l2] : {std::tuple{LatticeKind::honeycomb, 3, 2},
                              std::tuple{LatticeKind::square_octagon, 2, 3}}) {
    Lattice lat = build_lattice(kind, l1, l2);
    int counts[3] = {0, 0, 0};
    for (const auto& e : lat.edges) {
      counts[static_cast<int>(e.type)]++;
    }
    CHECK(counts[0] == lat.n_sites() / 2);
    CHECK(counts[1] == lat.n_sites() / 2);
    CHECK(counts[2] == lat.n_sites() / 2);
    for (int s = 0; s < lat.n_sites(); ++s) {
      std::set<int> nbrs;
      for (EdgeType t : {EdgeType::x, EdgeType::y, EdgeType::z}) {
        nbrs.insert(lat.neighbor(s, t));
      }
      CHECK(nbrs.count(s) == 0);
    }
  }
}

TEST_CASE("degenerate and invalid sizes") {
  CHECK_THROWS(build_lattice(LatticeKind::honeycomb, 0, 3));
  CHECK_THROWS(build_lattice(LatticeKind::honeycomb, 1, 1));
  Lattice thin = build_lattice(LatticeKind::honeycomb, 2, 1);
  CHECK(thin.n_sites() == 4);
  CHECK(!thin.plaquettes_enumerated);
  GaugeConfig g = standard_gauge(thin);
  CHECK_THROWS(plaquette_flux(thin, g, 0));
}

TEST_CASE("standard gauge is vortex free") {
  for (auto [kind, l1, l2] : {std::tuple{LatticeKind::honeycomb, 2, 2},
                              std::tuple{LatticeKind::honeycomb, 3, 3},
                              std::tuple{LatticeKind::square_octagon, 1, 1},
                              std::tuple{LatticeKind::square_octagon, 2, 2},
                              std::tuple{LatticeKind::square_octagon, 2, 1}}) {
    Lattice lat = build_lattice(kind, l1, l2);
    GaugeConfig g = standard_gauge(lat);
    for (int p = 0; p < lat.n_plaquettes(); ++p) {
      CHECK(plaquette_flux(lat, g, p) == 1);
    }
  }
}

TEST_CASE("flipping every u leaves even-cycle fluxes invariant") {
  Lattice lat = build_lattice(LatticeKind::honeycomb, 3, 3);
  GaugeConfig g = standard_gauge(lat);
  GaugeConfig flipped = g;
  for (auto& u : flipped.u) {
    u = -u;
  }
  for (int p = 0; p < lat.n_plaquettes(); ++p) {
    CHECK(plaquette_flux(lat, g, p) == plaquette_flux(lat, flipped, p));
  }
}

TEST_CASE("single edge flip toggles the two adjacent hexagons") {
  Lattice lat = build_lattice(LatticeKind::honeycomb, 3, 3);
  GaugeConfig g = standard_gauge(lat);
  g.u[0] = -1;
  CHECK(count_negative_fluxes(lat, g) == 2);
}

TEST_CASE("gauge transformation preserves all fluxes") {
  for (auto [kind, l1, l2] : {std::tuple{LatticeKind::honeycomb, 3, 3},
                              std::tuple{LatticeKind::square_octagon, 2, 2},
                              std::tuple{LatticeKind::square_octagon, 1, 1}}) {
    Lattice lat = build_lattice(kind, l1, l2);
    GaugeConfig g = standard_gauge(lat);
    g = insert_vortex_pair(lat, g, 0, 1);
    std::vector<int> before;
    for (int p = 0; p < lat.n_plaquettes(); ++p) {
      before.push_back(plaquette_flux(lat, g, p));
    }
    for (int s = 0; s < lat.n_sites(); ++s) {
      GaugeConfig t = gauge_transform(lat, g, s);
      for (int p = 0; p < lat.n_plaquettes(); ++p) {
        CHECK(plaquette_flux(lat, t, p) == before[p]);
      }
    }
  }
}

TEST_CASE("vortex pair insertion") {
  Lattice lat = build_lattice(LatticeKind::honeycomb, 3, 3);
  GaugeConfig g = standard_gauge(lat);

  SUBCASE("adjacent hexagons flip exactly one edge") {
    // Hexagons of cell (0,0) and cell (1,2) share the z-edge of cell (0,0).
    int p_a = 0;
    int p_b = 1 * 3 + 2;
    GaugeConfig v = insert_vortex_pair(lat, g, p_a, p_b);
    int flips = 0;
    for (int e = 0; e < lat.n_edges(); ++e) {
      if (v.u[e] != g.u[e]) {
        ++flips;
      }
    }
    CHECK(flips == 1);
    CHECK(plaquette_flux(lat, v, p_a) == -1);
    CHECK(plaquette_flux(lat, v, p_b) == -1);
    CHECK(count_negative_fluxes(lat, v) == 2);
  }

  SUBCASE("distant pair: two vortices, everything else untouched") {
    GaugeConfig v = insert_vortex_pair(lat, g, 0, 8);
    CHECK(plaquette_flux(lat, v, 0) == -1);
    CHECK(plaquette_flux(lat, v, 8) == -1);
    CHECK(count_negative_fluxes(lat, v) == 2);
    // Inserting along the same (deterministic) path again undoes it.
    GaugeConfig back = insert_vortex_pair(lat, v, 0, 8);
    CHECK(back.u == g.u);
  }

  SUBCASE("vortex count stays even under chains") {
    GaugeConfig v = insert_vortex_pair(lat, g, 0, 4);
    v = insert_vortex_pair(lat, v, 2, 7);
    v = insert_vortex_pair(lat, v, 4, 2);
    CHECK(count_negative_fluxes(lat, v) % 2 == 0);
  }

  CHECK_THROWS(insert_vortex_pair(lat, g, 3, 3));
  CHECK_THROWS(insert_vortex_pair(lat, g, 0, 99));
}

TEST_CASE("square-octagon vortex insertion including the 1x1 torus") {
  Lattice lat = build_lattice(LatticeKind::square_octagon, 1, 1);
  GaugeConfig g = standard_gauge(lat);
  GaugeConfig v = insert_vortex_pair(lat, g, 0, 1);
  CHECK(plaquette_flux(lat, v, 0) == -1);
  CHECK(plaquette_flux(lat, v, 1) == -1);
}

TEST_CASE("matter pairing") {
  Lattice hc = build_lattice(LatticeKind::honeycomb, 2, 2);
  CHECK(hc.n_matter_qubits() == 4);
  for (int s = 0; s < hc.n_sites(); ++s) {
    CHECK(hc.majorana_index(s) == s);  // cell-major, basis-minor ordering
  }
  Lattice so = build_lattice(LatticeKind::square_octagon, 2, 1);
  for (int cell = 0; cell < 2; ++cell) {
    CHECK(so.matter_pair(4 * cell + 0) == 2 * cell);
    CHECK(so.matter_pair(4 * cell + 1) == 2 * cell);
    CHECK(so.matter_pair(4 * cell + 2) == 2 * cell + 1);
    CHECK(so.matter_pair(4 * cell + 3) == 2 * cell + 1);
    CHECK(so.matter_parity(4 * cell + 0) == 0);
    CHECK(so.matter_parity(4 * cell + 1) == 1);
    CHECK(so.matter_parity(4 * cell + 2) == 0);
    CHECK(so.matter_parity(4 * cell + 3) == 1);
  }
}

TEST_CASE("text serialization golden files") {
  Lattice hc = build_lattice(LatticeKind::honeycomb, 2, 2);
  GaugeConfig g = standard_gauge(hc);
  CHECK(to_text(hc, &g) == read_golden("honeycomb_2x2.txt"));

  Lattice so = build_lattice(LatticeKind::square_octagon, 1, 1);
  CHECK(to_text(so) == read_golden("square_octagon_1x1.txt"));
}
