#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "normfib/fox.hpp"
#include "normfib/group.hpp"
#include "normfib/intmatrix.hpp"

namespace normfib {

// Face f of a tetrahedron is the one opposite vertex f. A gluing sends vertex
// v of this tet to perm[v] of `tet`; in particular perm[face] is the face it
// lands on.
struct Gluing {
  int tet = -1;
  int face = -1;
  std::array<int, 4> perm{};

  bool operator==(const Gluing& o) const {
    return tet == o.tet && face == o.face && perm == o.perm;
  }
};

// Edge slots are the 6 vertex pairs (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
int edge_slot(int a, int b);
std::array<int, 2> slot_vertices(int slot);

// Index of the truncated-tet vertex sitting at corner v on edge {v, w}.
int corner_slot(int v, int w);

// Glued tetrahedra with derived cell structure. The derived fields are filled
// by validate_triangulation; constructors of new triangulations (moves,
// covers, parsing) always leave the object validated.
//
// Edge classes are canonically oriented low-to-high along their
// lexicographically smallest (tet, slot) instance. Face classes take the
// smaller (tet, face) instance as canonical; crossing out of it counts +1.
// Link cells of the truncated complex are numbered as: link vertex 2e+end of
// edge class e (0 = tail), link arc 3f+c for corner c of face class f (corners
// sorted by vertex of the canonical instance), link triangle 4t+v.
struct Triangulation {
  int ntets = 0;
  std::vector<std::array<Gluing, 4>> glue;

  // Derived:
  std::vector<int> eps;  // per-tet orientation sign
  int nedges = 0;
  std::vector<std::array<int, 6>> edge_class;
  std::vector<std::array<int, 6>> edge_sign;
  std::vector<int> edge_valence;
  std::vector<std::pair<int, int>> edge_rep;  // canonical (tet, slot)
  int nverts = 0;
  std::vector<std::array<int, 4>> vertex_class;
  std::vector<bool> vertex_ideal;
  int nfaces = 0;
  std::vector<std::array<int, 4>> face_class;
  std::vector<std::pair<int, int>> face_rep;  // canonical (tet, face)

  bool ideal() const;
  int nlink_arcs() const { return 3 * nfaces; }

  // Link vertex id at corner v on edge {v, w} of tet t.
  int link_vertex(int t, int v, int w) const;
  // Link arc id and sign at corner v of face instance (t, f); the sign is +1
  // when the instance-local orientation (towards the higher of the other two
  // face vertices) matches the class orientation.
  std::pair<int, int> link_arc(int t, int f, int v) const;
};

// Fills derived fields and checks the structural invariants: gluings form a
// fixed-point-free involution covering all faces, connected, orientable, no
// edge class glued to itself reversed, every vertex link a sphere (material)
// or torus (ideal), and either a single material vertex or all vertices ideal.
void validate_triangulation(Triangulation& t);

// Text format: "tri v1", "tets <T>", one "glue t f t' f' p0p1p2p3" line per
// unordered face pair (smallest instance first), then "ideal <vertex-class>"
// lines for the torus-link vertex classes.
Triangulation parse_triangulation(const std::string& text);
std::string serialize_triangulation(const Triangulation& t);

// Relabeling-invariant encoding: two triangulations are isomorphic iff their
// canonical forms are equal strings.
std::string canonical_form(const Triangulation& t);

struct Relabeling {
  std::vector<int> tet;
  std::vector<std::array<int, 4>> perm;  // vertex map per source tet
};

std::optional<Relabeling> tri_isomorphism(const Triangulation& a, const Triangulation& b);

AbelianInvariants tri_homology(const Triangulation& t);

// Dual-spine presentation: generators are the face classes outside a spanning
// tree of the dual graph, one relator walks around each edge class.
Presentation tri_fundamental_group(const Triangulation& t);

// Integer simplicial 1-cocycle. Closed case: one value per edge class, the
// three edge values of every face sum to zero (with orientation signs) and
// coboundaries vanish, so cocycles biject with cohomology classes. Ideal
// case: the truncated complex carries extra values on the cusp link arcs,
// constrained by the truncated faces and the link triangles.
struct Cocycle {
  std::vector<Int> edge;
  std::vector<Int> link;  // empty for closed triangulations

  bool operator==(const Cocycle& o) const { return edge == o.edge && link == o.link; }
};

bool is_cocycle(const Triangulation& t, const Cocycle& c);

struct CocycleSpace {
  IntMatrix z1;  // columns form a basis of the cocycle lattice
  IntMatrix b1;  // columns span the coboundary sublattice
  int h1_rank = 0;
};

CocycleSpace cocycle_space(const Triangulation& t);

Cocycle cocycle_from_vector(const Triangulation& t, const std::vector<Int>& v);
std::vector<Int> cocycle_to_vector(const Cocycle& c);

// Per-tet integration of c with value 0 at a base instance: 4 vertex lifts in
// the closed case, 12 corner lifts (corner_slot order) in the ideal case.
std::vector<std::vector<Int>> tet_lifts(const Triangulation& t, const Cocycle& c);

// Sheet shift of c across each face class, crossing out of the canonical
// instance.
std::vector<Int> face_shifts(const Triangulation& t, const Cocycle& c);

// Values of c on the generators of tri_fundamental_group(t).
std::vector<Int> pair_with_generators(const Triangulation& t, const Cocycle& c);

// Coordinates of [c] dual to phi's free homology basis; phi must come from
// abelianization_map(tri_fundamental_group(t)).
std::vector<Int> class_of_cocycle(const Triangulation& t, const AbelianizationMap& phi,
                                  const Cocycle& c);
Cocycle cocycle_of_class(const Triangulation& t, const AbelianizationMap& phi,
                         const std::vector<Int>& dual_coords);

// Linear map between cocycle lattices of move-related triangulations, in
// cocycle_to_vector coordinates. Exact on cocycles; extended linearly along a
// fixed spanning structure elsewhere.
struct TransportMap {
  IntMatrix mat;

  Cocycle apply(const Triangulation& target, const Cocycle& c) const;
};

TransportMap compose(const TransportMap& first, const TransportMap& second);

// Pushforward of a cocycle on a along the isomorphism r: a -> b.
Cocycle relabel_cocycle(const Triangulation& a, const Triangulation& b, const Relabeling& r,
                        const Cocycle& c);

struct MoveResult {
  Triangulation tri;
  TransportMap transport;
};

// Replaces the two distinct tetrahedra joined along face (tet, face) by three
// around a new edge. The new edge's value is forced by the cocycle condition
// in the closed case and gauged to a canonical choice in the ideal case.
MoveResult pachner_23(const Triangulation& t, int tet, int face);

// Inverse move: collapses an edge class of valence 3 with three distinct
// tetrahedra around it back to two.
MoveResult pachner_32(const Triangulation& t, int edge);

std::vector<std::pair<int, int>> valid_23_sites(const Triangulation& t);
std::vector<int> valid_32_sites(const Triangulation& t);

// Cover induced by c mod n: n sheets of every tetrahedron, face gluings
// shifted by face_shifts. The deck transformation adds one sheet.
Triangulation cyclic_cover(const Triangulation& t, const Cocycle& c, int n);

}  // namespace normfib
