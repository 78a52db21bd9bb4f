#pragma once

#include <string>
#include <vector>

#include "normfib/group.hpp"
#include "normfib/laurent.hpp"
#include "normfib/polytope.hpp"

namespace normfib {

// Projection of the free group onto the free part of the abelianization of a
// presentation, in Smith-basis coordinates. Every relator maps to 0 and the
// generator images span all of Z^b1.
struct AbelianizationMap {
  int ngens = 0;
  int b1 = 0;
  IntMatrix images;           // b1 x ngens; column j = image of generator j
  std::vector<Int> torsion;   // torsion invariants of the abelianization

  Exp image(const Word& w) const;
};

AbelianizationMap abelianization_map(const Presentation& p);

// Free-differential derivative of w by the given generator, pushed through
// phi: d(uv) = du + phi(u) dv, d(g) = 1, d(g^-1) = -phi(g)^-1.
LaurentPoly fox_derivative(const Word& w, int gen, const AbelianizationMap& phi);

// Sum_j d(w)/d(x_j) * (phi(x_j) - 1) == phi(w) - 1.
bool fox_identity_holds(const Word& w, const AbelianizationMap& phi);

std::vector<std::vector<LaurentPoly>> fox_matrix(const Presentation& p,
                                                 const AbelianizationMap& phi);

struct AlexanderData {
  AbelianizationMap phi;
  std::vector<std::vector<LaurentPoly>> fox;  // relators x generators
  LaurentPoly delta;                          // canonical unit form, b1 variables
  std::vector<Exp> newton_vertices;
  std::vector<Int> vertex_coeff;              // coefficient of delta at each vertex
};

// Gcd of all (ngens-1)-minors of the Fox matrix. Minors are scanned in a fixed
// row-major order; a minor the running gcd already divides is skipped by an
// exact-division test instead of a gcd call. Requires b1 >= 1, and works on the
// presentation as given: simplify first, large inputs are hopeless.
AlexanderData alexander_polynomial(const Presentation& p);

// max over Newton-support pairs of omega . (e_i - e_j); 0 for a constant.
// For b1 = 1 this is the bare degree span, with no single-variable correction.
Int alexander_norm(const LaurentPoly& delta, const std::vector<Int>& omega);

// Dual norm ball of the Newton polytope. Each face carries the coefficient of
// the Newton vertex its cone is extreme on; a fibered face must carry +-1.
struct AlexanderBall {
  NormBall ball;
  std::vector<Int> face_coeff;
  std::vector<bool> face_passes;   // |face_coeff| == 1
  bool single_variable = false;    // norm values are uncorrected when true
};

AlexanderBall alexander_ball(const LaurentPoly& delta);

bool fibering_obstruction_passes(const AlexanderBall& b, int face);

// A class together with an independently obtained norm upper bound.
struct SandwichClass {
  std::vector<Int> omega;
  Int upper_bound;
};

enum class SandwichVerdict { Certified, Inconclusive };

// Squeeze argument: the lower bound only holds when b1 >= 2, so everything is
// Inconclusive otherwise. A face is certified when every one of its vertices
// has a certified class on its ray.
struct SandwichReport {
  bool applicable = false;
  std::string reason;
  std::vector<SandwichVerdict> classes;
  std::vector<Int> alexander_value;     // per class
  std::vector<SandwichVerdict> faces;   // per ball face
};

SandwichReport norm_sandwich(const AlexanderBall& b, const std::vector<SandwichClass>& checks);

}  // namespace normfib
