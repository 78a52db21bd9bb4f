#include "normfib/polytope.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace normfib {

namespace {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

// Row-reduce in place, returns rank.
int rref(RatMat& m) {
  if (m.empty()) return 0;
  const int rows = int(m.size()), cols = int(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[r], m[p]);
    Rat inv = m[r][c];
    for (int j = 0; j < cols; ++j) m[r][j] /= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (int j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

int rank_of(RatMat m) { return rref(m); }

// Basis of {x : m x = 0}.
RatMat nullspace(RatMat m) {
  if (m.empty()) return {};
  const int cols = int(m[0].size());
  rref(m);
  std::vector<int> lead(cols, -1);
  int r = 0;
  for (int i = 0; i < int(m.size()); ++i) {
    int c = 0;
    while (c < cols && m[i][c] == 0) ++c;
    if (c == cols) break;
    lead[c] = i;
    ++r;
  }
  RatMat basis;
  for (int c = 0; c < cols; ++c) {
    if (lead[c] >= 0) continue;
    RatVec v(cols, Rat(0));
    v[c] = 1;
    for (int cc = 0; cc < cols; ++cc)
      if (lead[cc] >= 0) v[cc] = -m[lead[cc]][c];
    basis.push_back(v);
  }
  return basis;
}

// Solve square system a x = b (a invertible).
RatVec solve_square(RatMat a, RatVec b) {
  const int n = int(a.size());
  for (int i = 0; i < n; ++i) a[i].push_back(b[i]);
  int r = rref(a);
  if (r != n) throw std::logic_error("solve_square: singular system");
  RatVec x(n);
  for (int i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

std::vector<Int> primitive_int_vector(const RatVec& v) {
  Int lcm = 1;
  for (const Rat& x : v) lcm = lcm_int(lcm, denominator(x));
  std::vector<Int> w(v.size());
  Int g = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    w[i] = numerator(v[i]) * (lcm / denominator(v[i]));
    g = gcd_int(g, w[i]);
  }
  if (g > 1)
    for (Int& x : w) x /= g;
  return w;
}

Rat dot_iv(const std::vector<Int>& a, const RatVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

Int dot_ii(const std::vector<Int>& a, const std::vector<Int>& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

int affine_dimension(const std::vector<std::vector<Rat>>& points) {
  if (points.empty()) return -1;
  RatMat diffs;
  for (size_t i = 1; i < points.size(); ++i) {
    RatVec d(points[0].size());
    for (size_t j = 0; j < d.size(); ++j) d[j] = points[i][j] - points[0][j];
    diffs.push_back(d);
  }
  return rank_of(diffs);
}

Polytope convex_hull(const std::vector<std::vector<Rat>>& input) {
  if (input.empty()) throw std::invalid_argument("convex_hull: no points");
  const int d = int(input[0].size());
  std::vector<RatVec> pts = input;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  int adim = affine_dimension(pts);
  if (adim != d) throw DegenerateHullError(adim);
  if (int(pts.size()) < d + 1) throw DegenerateHullError(adim);

  const int n = int(pts.size());
  // Candidate facet hyperplanes from all d-subsets. For a fixed outward
  // normal the supporting rhs is unique, so deduping by normal is sound.
  std::set<std::vector<Int>> seen;
  std::vector<Facet> facets;
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  bool done = false;
  while (!done) {
    RatMat diffs;
    for (int i = 1; i < d; ++i) {
      RatVec v(d);
      for (int j = 0; j < d; ++j) v[j] = pts[idx[i]][j] - pts[idx[0]][j];
      diffs.push_back(v);
    }
    RatMat ns = d == 1 ? RatMat{RatVec{Rat(1)}} : nullspace(diffs);
    if (ns.size() == 1) {
      std::vector<Int> normal = primitive_int_vector(ns[0]);
      Rat rhs_r = dot_iv(normal, pts[idx[0]]);
      bool above = false, below = false;
      for (int i = 0; i < n && !(above && below); ++i) {
        Rat s = dot_iv(normal, pts[i]) - rhs_r;
        if (s > 0) above = true;
        if (s < 0) below = true;
      }
      if (!(above && below)) {
        if (above) {
          for (Int& x : normal) x = -x;
          rhs_r = -rhs_r;
        }
        if (seen.insert(normal).second) {
          Facet f;
          f.normal = normal;
          f.rhs = rhs_r;
          for (int i = 0; i < n; ++i)
            if (dot_iv(normal, pts[i]) == rhs_r) f.vertices.push_back(i);
          facets.push_back(std::move(f));
        }
      }
    }
    // next subset
    int t = d - 1;
    while (t >= 0 && idx[t] == n - d + t) --t;
    if (t < 0)
      done = true;
    else {
      ++idx[t];
      for (int s = t + 1; s < d; ++s) idx[s] = idx[s - 1] + 1;
    }
  }

  // A point is a vertex iff the normals of its facets span R^d.
  std::vector<std::vector<int>> point_facets(n);
  for (int fi = 0; fi < int(facets.size()); ++fi)
    for (int p : facets[fi].vertices) point_facets[p].push_back(fi);
  std::vector<int> vertex_id(n, -1);
  std::vector<RatVec> verts;
  for (int p = 0; p < n; ++p) {
    RatMat normals;
    for (int fi : point_facets[p]) {
      RatVec v(d);
      for (int j = 0; j < d; ++j) v[j] = Rat(facets[fi].normal[j]);
      normals.push_back(v);
    }
    if (rank_of(normals) == d) {
      vertex_id[p] = int(verts.size());
      verts.push_back(pts[p]);
    }
  }

  Polytope poly;
  poly.ambient = d;
  poly.vertices = verts;
  for (Facet& f : facets) {
    Facet g;
    g.normal = f.normal;
    g.rhs = f.rhs;
    std::vector<Rat> bary(d, Rat(0));
    int cnt = 0;
    for (int p : f.vertices)
      if (vertex_id[p] >= 0) {
        g.vertices.push_back(vertex_id[p]);
        for (int j = 0; j < d; ++j) bary[j] += pts[p][j];
        ++cnt;
      }
    std::sort(g.vertices.begin(), g.vertices.end());
    for (int j = 0; j < d; ++j) bary[j] /= cnt;
    g.barycenter = bary;
    poly.facets.push_back(std::move(g));
  }
  return poly;
}

namespace {

// Integer coordinates of points in the lattice spanned by differences.
// Returns basis rows (s x ambient) and coordinates per point (s-dim).
struct LatticeCoords {
  IntMatrix basis;                  // s x ambient
  std::vector<std::vector<Int>> coords;
};

LatticeCoords lattice_coordinates(const std::vector<Exp>& points) {
  const int b = int(points[0].size());
  IntMatrix diffs(std::max<int>(0, int(points.size()) - 1), b);
  for (size_t i = 1; i < points.size(); ++i)
    for (int j = 0; j < b; ++j) diffs.at(int(i) - 1, j) = points[i][j] - points[0][j];
  IntMatrix basis = row_lattice_basis(diffs);
  const int s = basis.rows();
  LatticeCoords out{basis, {}};
  IntMatrix bt = basis.transpose();  // b x s
  for (const Exp& p : points) {
    std::vector<Int> rhs(b);
    for (int j = 0; j < b; ++j) rhs[j] = p[j] - points[0][j];
    if (s == 0) {
      out.coords.emplace_back();
      continue;
    }
    auto c = solve_integral(bt, rhs);
    if (!c) throw std::logic_error("lattice_coordinates: point outside lattice");
    out.coords.push_back(*c);
  }
  return out;
}

RatVec to_rat(const std::vector<Int>& v) {
  RatVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

}  // namespace

std::vector<Exp> hull_vertices_lattice(const std::vector<Exp>& input) {
  if (input.empty()) return {};
  std::vector<Exp> points = input;
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() == 1) return points;
  LatticeCoords lc = lattice_coordinates(points);
  const int s = lc.basis.rows();
  if (s == 0) return {points[0]};
  std::vector<RatVec> cpts;
  for (const auto& c : lc.coords) cpts.push_back(to_rat(c));
  if (int(cpts.size()) == s + 1 && affine_dimension(cpts) == s) {
    return points;  // a simplex: every point is a vertex
  }
  Polytope hull = convex_hull(cpts);
  std::vector<Exp> out;
  for (const auto& v : hull.vertices) {
    // Map back: find the input point with these coordinates.
    for (size_t i = 0; i < cpts.size(); ++i)
      if (cpts[i] == v) {
        out.push_back(points[i]);
        break;
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

NormBall dual_norm_ball(const std::vector<Exp>& newton_points) {
  if (newton_points.empty()) throw std::invalid_argument("dual_norm_ball: empty support");
  const int b = int(newton_points[0].size());
  std::vector<Exp> verts = hull_vertices_lattice(newton_points);

  NormBall ball;
  ball.ambient = b;

  // Difference body vertices live in the lattice spanned by differences.
  std::vector<Exp> dpoints;
  for (const Exp& u : verts)
    for (const Exp& v : verts) {
      if (u == v) continue;
      Exp d(b);
      for (int j = 0; j < b; ++j) d[j] = u[j] - v[j];
      dpoints.push_back(d);
    }

  if (dpoints.empty()) {  // single-point polytope: norm is identically zero
    ball.span_dim = 0;
    ball.degenerate = b > 0;
    for (int i = 0; i < b; ++i) {
      std::vector<Int> e(b, 0);
      e[i] = 1;
      ball.lineality.push_back(e);
    }
    return ball;
  }

  Exp origin(b, 0);
  dpoints.push_back(origin);
  LatticeCoords lc = lattice_coordinates(dpoints);  // note: first point is dpoints[0]
  const int s = lc.basis.rows();
  ball.span_dim = s;
  ball.degenerate = s < b;
  {
    IntMatrix k = kernel_basis(lc.basis);
    for (int j = 0; j < k.cols(); ++j) {
      std::vector<Int> v(b);
      for (int i = 0; i < b; ++i) v[i] = k.at(i, j);
      ball.lineality.push_back(v);
    }
  }

  std::vector<RatVec> cpts;
  for (const auto& c : lc.coords) cpts.push_back(to_rat(c));
  Polytope dhull = convex_hull(cpts);

  // Coordinates of the origin in the lattice frame (it is one of the cpts).
  RatVec origin_c = cpts.back();
  // Facet functionals normalized so rhs = 1 relative to the origin.
  // Ball cross-section vertex per facet of the difference body.
  IntMatrix gram(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      Int acc = 0;
      for (int k = 0; k < b; ++k) acc += lc.basis.at(i, k) * lc.basis.at(j, k);
      gram.at(i, j) = acc;
    }
  RatMat gram_r(s, RatVec(s));
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) gram_r[i][j] = Rat(gram.at(i, j));

  auto functional_to_ambient = [&](const RatVec& f) {
    RatVec lambda = solve_square(gram_r, f);
    RatVec w(b, Rat(0));
    for (int i = 0; i < s; ++i)
      for (int k = 0; k < b; ++k) w[k] += lambda[i] * Rat(lc.basis.at(i, k));
    return w;
  };

  std::vector<RatVec> ball_verts_ambient;
  for (const Facet& f : dhull.facets) {
    Rat rhs_rel = 0;
    for (int j = 0; j < s; ++j) rhs_rel += Rat(f.normal[j]) * (Rat(dhull.vertices[f.vertices[0]][j]) - origin_c[j]);
    if (rhs_rel <= 0) throw std::logic_error("dual_norm_ball: origin not interior");
    RatVec fr(s);
    for (int j = 0; j < s; ++j) fr[j] = Rat(f.normal[j]) / rhs_rel;
    ball_verts_ambient.push_back(functional_to_ambient(fr));
  }
  ball.vertices = ball_verts_ambient;

  // Faces of the ball correspond to vertices of the difference body.
  // Identify the dvertex in ambient coordinates and its containing facets.
  for (int vi = 0; vi < int(dhull.vertices.size()); ++vi) {
    const RatVec& vcoord = dhull.vertices[vi];
    if (vcoord == origin_c) continue;  // origin is interior, never a vertex
    NormBallFace face;
    // Ambient difference vector.
    std::vector<Int> damb(b, Int(0));
    for (int i = 0; i < s; ++i) {
      Rat ci = vcoord[i] - origin_c[i];
      if (denominator(ci) != 1) throw std::logic_error("dual_norm_ball: nonintegral coord");
      for (int k = 0; k < b; ++k) damb[k] += numerator(ci) * lc.basis.at(i, k);
    }
    face.pairing = damb;
    for (int fi = 0; fi < int(dhull.facets.size()); ++fi) {
      const auto& fverts = dhull.facets[fi].vertices;
      if (std::binary_search(fverts.begin(), fverts.end(), vi)) face.vertices.push_back(fi);
    }
    std::sort(face.vertices.begin(), face.vertices.end());
    RatVec bary(b, Rat(0));
    for (int id : face.vertices)
      for (int k = 0; k < b; ++k) bary[k] += ball.vertices[id][k];
    for (int k = 0; k < b; ++k) bary[k] /= int(face.vertices.size());
    face.barycenter = bary;

    // Extreme source vertices in the direction of the face's open cone.
    Rat best_max, best_min;
    bool f_first = true;
    int nmax = 0, nmin = 0;
    Exp emax, emin;
    for (const Exp& g : verts) {
      Rat val = 0;
      for (int k = 0; k < b; ++k) val += bary[k] * g[k];
      if (f_first || val > best_max) {
        best_max = val;
        emax = g;
        nmax = 1;
      } else if (val == best_max) {
        ++nmax;
      }
      if (f_first || val < best_min) {
        best_min = val;
        emin = g;
        nmin = 1;
      } else if (val == best_min) {
        ++nmin;
      }
      f_first = false;
    }
    if (nmax != 1 || nmin != 1)
      throw std::logic_error("dual_norm_ball: non-unique extreme vertex for face");
    face.newton_max = emax;
    face.newton_min = emin;
    Exp check(b);
    for (int k = 0; k < b; ++k) check[k] = emax[k] - emin[k];
    for (int k = 0; k < b; ++k)
      if (Int(check[k]) != damb[k])
        throw std::logic_error("dual_norm_ball: pairing mismatch with extreme vertices");
    ball.faces.push_back(std::move(face));
  }

  for (int i = 0; i < int(ball.faces.size()); ++i) {
    std::vector<Int> neg = ball.faces[i].pairing;
    for (Int& x : neg) x = -x;
    for (int j = 0; j < int(ball.faces.size()); ++j)
      if (ball.faces[j].pairing == neg) {
        ball.faces[i].antipode = j;
        break;
      }
    if (ball.faces[i].antipode < 0)
      throw std::logic_error("dual_norm_ball: missing antipodal face");
  }
  return ball;
}

Int norm_against_ball(const NormBall& ball, const std::vector<Int>& omega) {
  Int best = 0;
  for (const auto& f : ball.faces) best = std::max(best, dot_ii(f.pairing, omega));
  return best;
}

bool has_parallelepiped_combinatorics(const NormBall& ball) {
  if (ball.degenerate || ball.span_dim != 3) return false;
  if (ball.vertices.size() != 8 || ball.faces.size() != 6) return false;
  for (const auto& f : ball.faces)
    if (f.vertices.size() != 4) return false;
  // Each vertex lies on exactly 3 faces.
  std::vector<int> cnt(ball.vertices.size(), 0);
  for (const auto& f : ball.faces)
    for (int v : f.vertices) ++cnt[v];
  for (int c : cnt)
    if (c != 3) return false;
  return true;
}

bool has_cross_polytope_combinatorics(const NormBall& ball, int k) {
  if (ball.degenerate || ball.span_dim != k) return false;
  if (int(ball.vertices.size()) != 2 * k) return false;
  if (int(ball.faces.size()) != (1 << k)) return false;
  for (const auto& f : ball.faces)
    if (int(f.vertices.size()) != k) return false;
  // Vertices come in antipodal pairs and each face picks one per pair.
  std::vector<int> mate(ball.vertices.size(), -1);
  for (int i = 0; i < int(ball.vertices.size()); ++i)
    for (int j = i + 1; j < int(ball.vertices.size()); ++j) {
      bool anti = true;
      for (size_t t = 0; t < ball.vertices[i].size(); ++t)
        if (ball.vertices[i][t] != -ball.vertices[j][t]) {
          anti = false;
          break;
        }
      if (anti) mate[i] = j, mate[j] = i;
    }
  for (int m : mate)
    if (m < 0) return false;
  for (const auto& f : ball.faces)
    for (int v : f.vertices)
      if (std::find(f.vertices.begin(), f.vertices.end(), mate[v]) != f.vertices.end())
        return false;
  return true;
}

int face_cone_of(const NormBall& ball, const std::vector<Int>& omega) {
  Int nrm = norm_against_ball(ball, omega);
  if (nrm == 0) return -1;
  int hit = -1;
  for (int i = 0; i < int(ball.faces.size()); ++i) {
    if (dot_ii(ball.faces[i].pairing, omega) == nrm) {
      if (hit >= 0) return -1;  // on a boundary between cones
      hit = i;
    }
  }
  return hit;
}

bool laurent_equivalent(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars() != b.nvars()) return false;
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.term_count() != b.term_count()) return false;
  const int nv = a.nvars();
  if (nv == 0) return a.terms().begin()->second == b.terms().begin()->second ||
                       a.terms().begin()->second == -b.terms().begin()->second;

  std::vector<Exp> sa = a.support(), sb = b.support();
  std::vector<Exp> va = hull_vertices_lattice(sa), vb = hull_vertices_lattice(sb);
  if (va.size() != vb.size()) return false;
  if (va.size() == 1) {
    return abs_int(a.terms().begin()->second) == abs_int(b.terms().begin()->second);
  }

  // Need a full-dimensional support to pin the linear part.
  {
    std::vector<RatVec> pts;
    for (const Exp& e : va) {
      RatVec v(nv);
      for (int i = 0; i < nv; ++i) v[i] = Rat(e[i]);
      pts.push_back(v);
    }
    if (affine_dimension(pts) != nv)
      throw std::runtime_error("laurent_equivalent: support not full-dimensional");
  }

  // Affine basis v0..v_nv from a's hull vertices (lex-first independent tuple).
  std::vector<Exp> basept;
  basept.push_back(va[0]);
  {
    RatMat acc;
    for (size_t i = 1; i < va.size() && int(basept.size()) < nv + 1; ++i) {
      RatVec d(nv);
      for (int j = 0; j < nv; ++j) d[j] = Rat(va[i][j]) - Rat(va[0][j]);
      RatMat trial = acc;
      trial.push_back(d);
      if (rank_of(trial) > rank_of(acc)) {
        acc.push_back(d);
        basept.push_back(va[i]);
      }
    }
  }
  if (int(basept.size()) != nv + 1) return false;

  IntMatrix vmat(nv, nv);
  for (int c = 0; c < nv; ++c)
    for (int r = 0; r < nv; ++r) vmat.at(r, c) = basept[c + 1][r] - basept[0][r];
  Int vdet = determinant(vmat);

  // Try each ordered (nv+1)-tuple of b's hull vertices as the image.
  std::vector<int> pick(nv + 1, 0);
  const int m = int(vb.size());
  std::vector<int> stack(nv + 1, 0);
  std::function<bool(int)> rec = [&](int depth) -> bool {
    if (depth == nv + 1) {
      IntMatrix wmat(nv, nv);
      for (int c = 0; c < nv; ++c)
        for (int r = 0; r < nv; ++r) wmat.at(r, c) = vb[stack[c + 1]][r] - vb[stack[0]][r];
      Int wdet = determinant(wmat);
      if (abs_int(wdet) != abs_int(vdet)) return false;
      // Solve M * vmat = wmat over the integers.
      auto mt = solve_integral_matrix(vmat.transpose(), wmat.transpose());
      if (!mt) return false;
      IntMatrix mm = mt->transpose();
      if (abs_int(determinant(mm)) != 1) return false;
      std::vector<Int> t(nv);
      for (int r = 0; r < nv; ++r) {
        Int acc = 0;
        for (int c = 0; c < nv; ++c) acc += mm.at(r, c) * basept[0][c];
        t[r] = Int(vb[stack[0]][r]) - acc;
      }
      int sign = 0;
      Exp img(nv);
      for (const auto& [e, c] : a.terms()) {
        for (int r = 0; r < nv; ++r) {
          Int acc = t[r];
          for (int cc = 0; cc < nv; ++cc) acc += mm.at(r, cc) * e[cc];
          img[r] = int(acc);
        }
        Int cb = b.coeff(img);
        if (cb == 0) return false;
        if (cb == c) {
          if (sign == -1) return false;
          sign = 1;
        } else if (cb == -c) {
          if (sign == 1) return false;
          sign = -1;
        } else {
          return false;
        }
      }
      return true;
    }
    for (int i = 0; i < m; ++i) {
      stack[depth] = i;
      if (rec(depth + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

}  // namespace normfib
