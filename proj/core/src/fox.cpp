#include "normfib/fox.hpp"

#include <cstdlib>
#include <stdexcept>

namespace normfib {

namespace {

Exp column_exp(const IntMatrix& m, int j) {
  Exp e(m.rows());
  for (int i = 0; i < m.rows(); ++i) e[i] = static_cast<int>(m.at(i, j));
  return e;
}

bool is_unit(const LaurentPoly& p) {
  return p.term_count() == 1 && abs_int(p.terms().begin()->second) == 1;
}

bool next_combination(std::vector<int>& idx, int n) {
  int k = int(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

Exp AbelianizationMap::image(const Word& w) const {
  std::vector<Int> ev = w.exponent_vector(ngens);
  Exp out(b1, 0);
  for (int i = 0; i < b1; ++i) {
    Int s = 0;
    for (int j = 0; j < ngens; ++j) s += images.at(i, j) * ev[j];
    out[i] = static_cast<int>(s);
  }
  return out;
}

AbelianizationMap abelianization_map(const Presentation& p) {
  // Coker coordinates z = u x of the relation lattice; rows of u past the Smith
  // rank project onto the free quotient.
  IntMatrix rt = row_lattice_basis(relation_matrix(p)).transpose();
  SmithForm s = smith_normal_form(rt);
  AbelianizationMap m;
  m.ngens = p.ngens();
  m.b1 = p.ngens() - s.rank;
  m.images = IntMatrix(m.b1, m.ngens);
  for (int i = 0; i < m.b1; ++i)
    for (int j = 0; j < m.ngens; ++j) m.images.at(i, j) = s.u.at(s.rank + i, j);
  for (int i = 0; i < s.rank; ++i)
    if (s.d.at(i, i) > 1) m.torsion.push_back(s.d.at(i, i));
  return m;
}

LaurentPoly fox_derivative(const Word& w, int gen, const AbelianizationMap& phi) {
  if (gen < 0 || gen >= phi.ngens) throw std::invalid_argument("fox_derivative: bad generator");
  LaurentPoly out(phi.b1);
  Exp prefix(phi.b1, 0);
  for (int l : w.letters()) {
    int g = std::abs(l) - 1;
    Exp cg = column_exp(phi.images, g);
    if (l > 0) {
      if (g == gen) out.add_term(prefix, 1);
      for (int i = 0; i < phi.b1; ++i) prefix[i] += cg[i];
    } else {
      for (int i = 0; i < phi.b1; ++i) prefix[i] -= cg[i];
      if (g == gen) out.add_term(prefix, -1);
    }
  }
  return out;
}

bool fox_identity_holds(const Word& w, const AbelianizationMap& phi) {
  LaurentPoly lhs(phi.b1);
  LaurentPoly one = LaurentPoly::constant(phi.b1, 1);
  for (int j = 0; j < phi.ngens; ++j) {
    LaurentPoly xj = LaurentPoly::monomial(phi.b1, column_exp(phi.images, j), 1);
    lhs = lhs + fox_derivative(w, j, phi) * (xj - one);
  }
  LaurentPoly rhs = LaurentPoly::monomial(phi.b1, phi.image(w), 1) - one;
  return lhs == rhs;
}

std::vector<std::vector<LaurentPoly>> fox_matrix(const Presentation& p,
                                                 const AbelianizationMap& phi) {
  std::vector<std::vector<LaurentPoly>> m;
  for (const Word& r : p.rels) {
    std::vector<LaurentPoly> row;
    for (int j = 0; j < p.ngens(); ++j) row.push_back(fox_derivative(r, j, phi));
    m.push_back(std::move(row));
  }
  return m;
}

AlexanderData alexander_polynomial(const Presentation& p) {
  AlexanderData out;
  out.phi = abelianization_map(p);
  if (out.phi.b1 < 1)
    throw std::domain_error("alexander_polynomial: abelianization has free rank 0");
  out.fox = fox_matrix(p, out.phi);
  for (const Word& r : p.rels)
    if (!fox_identity_holds(r, out.phi))
      throw std::logic_error("alexander_polynomial: fox identity failed on a relator");

  int g = p.ngens(), nr = int(p.rels.size()), k = g - 1;
  LaurentPoly delta(out.phi.b1);
  if (k == 0) {
    delta = LaurentPoly::constant(out.phi.b1, 1);
  } else if (nr >= k) {
    std::vector<int> rows(k);
    for (int i = 0; i < k; ++i) rows[i] = i;
    bool done = false;
    do {
      for (int drop = 0; drop < g && !done; ++drop) {
        std::vector<std::vector<LaurentPoly>> sub;
        for (int i : rows) {
          std::vector<LaurentPoly> row;
          for (int j = 0; j < g; ++j)
            if (j != drop) row.push_back(out.fox[i][j]);
          sub.push_back(std::move(row));
        }
        LaurentPoly minor = laurent_det(std::move(sub));
        if (delta.is_zero()) {
          delta = minor;
        } else if (!divide_exact(minor, delta)) {
          delta = laurent_gcd(delta, minor);
        }
        if (is_unit(delta)) done = true;
      }
    } while (!done && next_combination(rows, nr));
  }
  out.delta = canonical_unit_form(delta);
  out.newton_vertices = hull_vertices_lattice(out.delta.support());
  for (const Exp& v : out.newton_vertices) out.vertex_coeff.push_back(out.delta.coeff(v));
  return out;
}

Int alexander_norm(const LaurentPoly& delta, const std::vector<Int>& omega) {
  if (int(omega.size()) != delta.nvars())
    throw std::invalid_argument("alexander_norm: class length != variable count");
  bool first = true;
  Int lo = 0, hi = 0;
  for (const auto& [e, c] : delta.terms()) {
    Int d = 0;
    for (int i = 0; i < delta.nvars(); ++i) d += omega[i] * e[i];
    if (first || d < lo) lo = d;
    if (first || d > hi) hi = d;
    first = false;
  }
  return hi - lo;
}

AlexanderBall alexander_ball(const LaurentPoly& delta) {
  if (delta.is_zero()) throw std::invalid_argument("alexander_ball: zero polynomial");
  AlexanderBall b;
  b.ball = dual_norm_ball(delta.support());
  b.single_variable = delta.nvars() == 1;
  for (const NormBallFace& f : b.ball.faces) {
    Int c = delta.coeff(f.newton_max);
    b.face_coeff.push_back(c);
    b.face_passes.push_back(abs_int(c) == 1);
  }
  return b;
}

bool fibering_obstruction_passes(const AlexanderBall& b, int face) {
  if (face < 0 || face >= int(b.face_passes.size()))
    throw std::invalid_argument("fibering_obstruction_passes: bad face index");
  return b.face_passes[face];
}

namespace {

// omega = t * vertex for some rational t > 0.
bool on_ray(const std::vector<Int>& omega, const std::vector<Rat>& vertex) {
  int n = int(omega.size());
  if (int(vertex.size()) != n) return false;
  bool nonzero = false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (Rat(omega[i]) * vertex[j] != Rat(omega[j]) * vertex[i]) return false;
  for (int i = 0; i < n; ++i) {
    if (vertex[i] == 0) {
      if (omega[i] != 0) return false;
      continue;
    }
    if (omega[i] == 0) return false;
    if ((vertex[i] > 0) != (omega[i] > 0)) return false;
    nonzero = true;
  }
  return nonzero;
}

}  // namespace

SandwichReport norm_sandwich(const AlexanderBall& b, const std::vector<SandwichClass>& checks) {
  SandwichReport rep;
  for (const SandwichClass& c : checks)
    rep.alexander_value.push_back(norm_against_ball(b.ball, c.omega));
  if (b.ball.ambient < 2) {
    rep.reason = "needs first Betti number >= 2; the lower bound fails below that";
    rep.classes.assign(checks.size(), SandwichVerdict::Inconclusive);
    rep.faces.assign(b.ball.faces.size(), SandwichVerdict::Inconclusive);
    return rep;
  }
  rep.applicable = true;
  for (size_t i = 0; i < checks.size(); ++i)
    rep.classes.push_back(checks[i].upper_bound == rep.alexander_value[i]
                              ? SandwichVerdict::Certified
                              : SandwichVerdict::Inconclusive);
  for (const NormBallFace& f : b.ball.faces) {
    bool all = true;
    for (int vid : f.vertices) {
      bool covered = false;
      for (size_t i = 0; i < checks.size() && !covered; ++i)
        covered = rep.classes[i] == SandwichVerdict::Certified &&
                  on_ray(checks[i].omega, b.ball.vertices[vid]);
      if (!covered) {
        all = false;
        break;
      }
    }
    rep.faces.push_back(all ? SandwichVerdict::Certified : SandwichVerdict::Inconclusive);
  }
  return rep;
}

}  // namespace normfib
