#pragma once

#include "normfib/tri.hpp"

namespace normfib {

// Small frozen triangulations used by tests, benchmarks and the demo tools.
// Each was found by exhaustive search over gluings and pinned down by its
// invariants; the strings are in the serialize_triangulation format.

// One tetrahedron, closed, one vertex; the 3-sphere.
Triangulation sphere_one_tet();

// Two tetrahedra, closed, one vertex, H1 = Z/5. The smallest frozen closed
// example whose face classes join distinct tetrahedra, so every move kind
// applies to it.
Triangulation closed_two_tet();

// Two tetrahedra, closed, one vertex, pi1 = Z; the 2-sphere bundle S^2 x S^1.
// The only closed fixture with positive betti number: the level surface dual
// to the H1 generator is a 2-sphere, so its norm bound is 0.
Triangulation s2xs1();

// Two ideal tetrahedra, one torus cusp; the figure-eight knot complement.
// H1 = Z, Alexander polynomial t^2 - 3t + 1.
Triangulation figure_eight();

// Four ideal tetrahedra around a common axis (an ideal octahedron), two torus
// cusps; the Whitehead link complement. H1 = Z^2, Alexander polynomial
// (x - 1)(y - 1), and the two cusps are interchangeable: the generator basis
// of H1 is dual to the pair of meridians.
Triangulation whitehead();

}  // namespace normfib
