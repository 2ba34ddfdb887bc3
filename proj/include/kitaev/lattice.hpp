#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace kitaev {

enum class LatticeKind { honeycomb, square_octagon };
enum class EdgeType : int { x = 0, y = 1, z = 2 };
enum class PlaquetteKind { hexagon, square, octagon };

const char* to_string(LatticeKind k);
const char* to_string(EdgeType t);
const char* to_string(PlaquetteKind k);
LatticeKind lattice_kind_from_string(const std::string& s);

struct Site {
  int i1 = 0;
  int i2 = 0;
  int basis = 1;  // 1-based within the unit cell
  double px = 0.0;
  double py = 0.0;
};

// Oriented edge; the gauge value is stored read along tail -> head.
struct Edge {
  int tail = 0;
  int head = 0;
  EdgeType type = EdgeType::x;
  double dx = 0.0;  // geometric tail -> head bond vector (unwrapped)
  double dy = 0.0;
};

struct PlaquetteStep {
  int edge = 0;
  bool along = true;  // step direction matches the edge orientation
};

struct Plaquette {
  PlaquetteKind kind = PlaquetteKind::hexagon;
  std::vector<int> sites;           // ordered cycle
  std::vector<PlaquetteStep> steps;  // steps[k] joins sites[k] -> sites[k+1]
};

struct Lattice {
  LatticeKind kind = LatticeKind::honeycomb;
  int L1 = 1;
  int L2 = 1;
  std::vector<Site> sites;
  std::vector<Edge> edges;
  std::vector<Plaquette> plaquettes;
  // Per site: incident edge index for each of the x, y, z types.
  std::vector<std::array<int, 3>> site_edges;
  bool plaquettes_enumerated = true;

  int n_cells() const { return L1 * L2; }
  int n_sites() const { return static_cast<int>(sites.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
  int n_plaquettes() const { return static_cast<int>(plaquettes.size()); }

  int edge_at(int site, EdgeType t) const { return site_edges[site][static_cast<int>(t)]; }
  int neighbor(int site, EdgeType t) const;
  // Geometric direction of the given incident edge, pointing away from site.
  std::array<double, 2> direction_from(int site, int edge) const;

  // Pairing of matter Majoranas into complex fermions: basis sites (1,2) of a
  // cell share a pair, and (3,4) on the square-octagon lattice.
  int matter_pair(int site) const;
  int matter_parity(int site) const;
  int majorana_index(int site) const { return 2 * matter_pair(site) + matter_parity(site); }
  int n_matter_qubits() const { return n_sites() / 2; }
};

struct GaugeConfig {
  // u[e] = +-1 read along the oriented edge e.
  std::vector<int> u;
};

Lattice build_lattice(LatticeKind kind, int L1, int L2);

// All-ones gauge on the oriented edges; every plaquette flux is +1.
GaugeConfig standard_gauge(const Lattice& lattice);

// Gauge value read in the direction from_site -> to its neighbor across edge e.
int gauge_value(const Lattice& lattice, const GaugeConfig& gauge, int edge, int from_site);

int plaquette_flux(const Lattice& lattice, const GaugeConfig& gauge, int p);

// Flip the gauge on the three edges incident to `site` (a gauge
// transformation; leaves every flux invariant).
GaugeConfig gauge_transform(const Lattice& lattice, const GaugeConfig& gauge, int site);

// Flip the gauge along a shortest dual-lattice path so that exactly the
// fluxes of p_a and p_b change sign. Deterministic path choice (BFS with
// index-ordered neighbor expansion).
GaugeConfig insert_vortex_pair(const Lattice& lattice, const GaugeConfig& gauge, int p_a,
                               int p_b);

// Plain-text description (one tab-separated record per line); the gauge block
// is included when a gauge is given.
std::string to_text(const Lattice& lattice, const GaugeConfig* gauge = nullptr);

}  // namespace kitaev
