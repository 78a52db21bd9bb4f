#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "normfib/tri.hpp"

namespace normfib {

// One disk of the level surface inside a single tetrahedron: the piece of the
// preimage of level + 1/2 bounded by one circle on the tet boundary.
struct SurfaceDisk {
  int tet = 0;
  Int level = 0;      // tet lift frame; the disk sits at level + 1/2
  std::string type;   // "tri0".."tri3", "quad01", "quad02", "quad03", "band"
  std::vector<int> arcs;      // interior arc cells on the boundary circle
  std::vector<int> boundary;  // cusp arc cells (ideal case only)
  int component = -1;
};

struct SurfaceComponent {
  long long chi = 0;
  bool orientable = true;  // transverse orientation from the circle map
  int boundary_curves = 0;
  long long disks = 0;
};

// Embedded normal surface dual to an integral cocycle: the preimage of the
// generic level 1/2 under the circle map that wraps each edge by its cocycle
// value. Cell counts: |omega(e)| points per edge, one arc per face per
// boundary-crossing pair, one disk per boundary circle per tet level.
struct DualSurface {
  Cocycle omega;
  std::vector<std::vector<Int>> lifts;  // tet_lifts frame per tetrahedron
  std::vector<Int> edge_points;         // per edge class
  std::vector<Int> arc_points;          // per link arc class (ideal case)
  std::vector<long long> face_arcs;     // per face class
  long long nvertices = 0;
  long long narcs = 0;
  long long nboundary_arcs = 0;
  std::vector<SurfaceDisk> disks;
  std::vector<SurfaceComponent> components;

  long long chi() const;
};

DualSurface build_dual_surface(const Triangulation& t, const Cocycle& omega);

std::vector<SurfaceComponent> surface_components(const DualSurface& s);

// Norm upper bound from one surface: sum of max(0, -chi) over components,
// with spheres, disks, tori and annuli contributing nothing. The witness
// triangulation and class replay to the same bound.
struct NormBound {
  Cocycle omega;        // on the witness triangulation
  long long bound = 0;
  std::string witness;  // serialized witness triangulation
  std::vector<std::string> trace;
  std::uint64_t seed = 0;
};

NormBound norm_upper_bound(const Triangulation& t, const Cocycle& omega);

// Seeded multi-start Pachner walk keeping the best bound per class. Each
// worker runs `budget` moves (2-3 with probability 0.4, else 3-2) and carries
// every class through the move transports; the merge is deterministic:
// smallest bound, then fewer tetrahedra, then smallest canonical form.
std::vector<NormBound> randomized_norm_search(const Triangulation& t,
                                              const std::vector<Cocycle>& classes, int budget,
                                              std::uint64_t seed, int workers);

std::string surface_report(const Triangulation& t, const DualSurface& s);

}  // namespace normfib
