#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "normfib/bigint.hpp"
#include "normfib/intmatrix.hpp"
#include "normfib/laurent.hpp"

namespace normfib {

// Thrown when an operation needs a full-dimensional point set.
class DegenerateHullError : public std::runtime_error {
 public:
  explicit DegenerateHullError(int affine_dim)
      : std::runtime_error("affinely degenerate input, affine hull dimension " +
                           std::to_string(affine_dim)),
        affine_dim(affine_dim) {}
  int affine_dim;
};

struct Facet {
  std::vector<Int> normal;   // primitive outward normal, normal . x <= rhs
  Rat rhs;
  std::vector<int> vertices;  // sorted vertex ids
  std::vector<Rat> barycenter;
};

struct Polytope {
  int ambient = 0;
  std::vector<std::vector<Rat>> vertices;  // sorted lexicographically
  std::vector<Facet> facets;
};

int affine_dimension(const std::vector<std::vector<Rat>>& points);

// Exact facet-enumeration hull; requires affinely full-dimensional input
// (throws DegenerateHullError otherwise). Intended for ambient dim <= 6 and
// modest point counts.
Polytope convex_hull(const std::vector<std::vector<Rat>>& points);

// Vertices of conv(points) for integer points of any affine dimension.
std::vector<Exp> hull_vertices_lattice(const std::vector<Exp>& points);

// One face of a dual Thurston-style norm ball. The face is dual to the vertex
// `pairing` of the difference body; classes in the open cone over the face
// achieve their norm exactly on `pairing`.
struct NormBallFace {
  std::vector<Int> pairing;        // g_max - g_min in ambient coordinates
  std::vector<int> vertices;       // ball vertex ids
  std::vector<Rat> barycenter;     // ambient dual coordinates
  Exp newton_max, newton_min;      // source-polytope vertices extreme on the cone
  int antipode = -1;               // face index with opposite pairing
};

// Unit ball of omega |-> max_{u,v in P} omega(u - v) as a polyhedron in the
// dual space. When the difference body is not full-dimensional the ball is a
// cylinder: `lineality` spans the directions of vanishing norm and the
// vertices describe the canonical cross-section through the origin.
struct NormBall {
  int ambient = 0;
  int span_dim = 0;                         // dim of the difference body
  bool degenerate = false;                  // span_dim < ambient
  std::vector<std::vector<Int>> lineality;  // basis vectors, size ambient - span_dim
  std::vector<std::vector<Rat>> vertices;   // cross-section vertices, ambient coords
  std::vector<NormBallFace> faces;
};

NormBall dual_norm_ball(const std::vector<Exp>& newton_points);

// max over faces of pairing . omega (0 for a point polytope).
Int norm_against_ball(const NormBall& ball, const std::vector<Int>& omega);

bool has_parallelepiped_combinatorics(const NormBall& ball);
bool has_cross_polytope_combinatorics(const NormBall& ball, int k);

// Index of the unique face whose open cone contains omega, or -1 when omega
// lies on a cone boundary (or the ball is a point).
int face_cone_of(const NormBall& ball, const std::vector<Int>& omega);

}  // namespace normfib
