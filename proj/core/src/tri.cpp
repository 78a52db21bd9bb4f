#include "normfib/tri.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace normfib {

namespace {

constexpr std::array<std::array<int, 2>, 6> kSlots = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

using Perm = std::array<int, 4>;

Perm perm_inverse(const Perm& p) {
  Perm q{};
  for (int i = 0; i < 4; ++i) q[p[i]] = i;
  return q;
}

int perm_sign(const Perm& p) {
  int s = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

bool is_perm(const Perm& p) {
  std::array<bool, 4> seen{};
  for (int v : p) {
    if (v < 0 || v > 3 || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

// Union-find tracking a sign relative to the parent.
struct SignedUF {
  std::vector<int> parent, sign;
  bool clash = false;

  explicit SignedUF(int n) : parent(n), sign(n, 1) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  std::pair<int, int> find(int x) {
    int s = 1;
    while (parent[x] != x) {
      s *= sign[x];
      x = parent[x];
    }
    return {x, s};
  }

  void unite(int a, int b, int rel) {
    auto [ra, sa] = find(a);
    auto [rb, sb] = find(b);
    if (ra == rb) {
      if (sa * sb != rel) clash = true;
      return;
    }
    parent[ra] = rb;
    sign[ra] = sa * sb * rel;
  }
};

struct UF {
  std::vector<int> parent;

  explicit UF(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  void unite(int a, int b) { parent[find(a)] = parent[find(b)]; }
};

struct WalkStep {
  int tet, a, b;  // directed edge within the tet
  int enter, exit;
};

// The cycle of tetrahedron corners around an edge class, starting from its
// canonical representative.
std::vector<WalkStep> edge_walk(const Triangulation& t, int e) {
  auto [t0, s0] = t.edge_rep[e];
  auto [a0, b0] = kSlots[s0];
  int enter0 = -1, exit0 = -1;
  for (int f = 0; f < 4; ++f)
    if (f != a0 && f != b0) (enter0 < 0 ? enter0 : exit0) = f;
  std::vector<WalkStep> walk;
  int tet = t0, a = a0, b = b0, enter = enter0, exit = exit0;
  do {
    walk.push_back({tet, a, b, enter, exit});
    const Gluing& g = t.glue[tet][exit];
    int na = g.perm[a], nb = g.perm[b], nenter = g.perm[exit];
    tet = g.tet;
    a = na;
    b = nb;
    enter = nenter;
    for (exit = 0; exit == a || exit == b || exit == enter; ++exit) {}
    if (walk.size() > t.glue.size() * 24) throw std::invalid_argument("bad edge link");
  } while (!(tet == t0 && a == a0 && b == b0 && enter == enter0));
  return walk;
}

}  // namespace

int edge_slot(int a, int b) {
  if (a > b) std::swap(a, b);
  for (int s = 0; s < 6; ++s)
    if (kSlots[s][0] == a && kSlots[s][1] == b) return s;
  throw std::invalid_argument("bad edge slot");
}

std::array<int, 2> slot_vertices(int slot) { return kSlots[slot]; }

int corner_slot(int v, int w) { return 3 * v + (w > v ? w - 1 : w); }

bool Triangulation::ideal() const {
  for (bool b : vertex_ideal)
    if (b) return true;
  return false;
}

int Triangulation::link_vertex(int t, int v, int w) const {
  int s = edge_slot(v, w);
  int e = edge_class[t][s];
  auto [lo, hi] = kSlots[s];
  // Canonical tail sits at the low vertex of the representative slot.
  int end = (v == hi) ? 1 : 0;
  if (edge_sign[t][s] < 0) end = 1 - end;
  return 2 * e + end;
}

std::pair<int, int> Triangulation::link_arc(int t, int f, int v) const {
  int cls = face_class[t][f];
  auto [rt, rf] = face_rep[cls];
  int v2 = v, x2 = -1, y2 = -1;
  if (rt == t && rf == f) {
    for (int u = 0; u < 4; ++u)
      if (u != f && u != v) (x2 < 0 ? x2 : y2) = u;
  } else {
    const Gluing& g = glue[t][f];
    v2 = g.perm[v];
    int x = -1, y = -1;
    for (int u = 0; u < 4; ++u)
      if (u != f && u != v) (x < 0 ? x : y) = u;
    x2 = g.perm[x];
    y2 = g.perm[y];
  }
  int corner = 0;
  for (int u = 0; u < 4; ++u)
    if (u != rf && u < v2) ++corner;
  int sign = (x2 < y2) ? 1 : -1;
  return {3 * cls + corner, sign};
}

void validate_triangulation(Triangulation& t) {
  int T = t.ntets;
  if (T <= 0) throw std::invalid_argument("empty triangulation");
  if (int(t.glue.size()) != T) throw std::invalid_argument("gluing table size mismatch");
  for (int i = 0; i < T; ++i)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = t.glue[i][f];
      if (g.tet < 0) throw std::invalid_argument("unglued face");
      if (g.tet >= T || g.face < 0 || g.face > 3 || !is_perm(g.perm))
        throw std::invalid_argument("bad gluing");
      if (g.perm[f] != g.face) throw std::invalid_argument("bad gluing");
      if (g.tet == i && g.face == f) throw std::invalid_argument("face glued to itself");
      const Gluing& h = t.glue[g.tet][g.face];
      if (h.tet != i || h.face != f || h.perm != perm_inverse(g.perm))
        throw std::invalid_argument("non-involutive gluing");
    }

  // Orientations via breadth-first propagation; a gluing by an odd permutation
  // joins tetrahedra of equal sign.
  t.eps.assign(T, 0);
  t.eps[0] = 1;
  std::vector<int> queue = {0};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int i = queue[qi];
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = t.glue[i][f];
      int want = -perm_sign(g.perm) * t.eps[i];
      if (t.eps[g.tet] == 0) {
        t.eps[g.tet] = want;
        queue.push_back(g.tet);
      } else if (t.eps[g.tet] != want) {
        throw std::invalid_argument("orientation clash");
      }
    }
  }
  if (int(queue.size()) != T) throw std::invalid_argument("disconnected");

  // Edge classes with orientation parity.
  SignedUF euf(6 * T);
  for (int i = 0; i < T; ++i)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = t.glue[i][f];
      for (int s = 0; s < 6; ++s) {
        auto [a, b] = kSlots[s];
        if (a == f || b == f) continue;
        int pa = g.perm[a], pb = g.perm[b];
        int rel = (pa < pb) ? 1 : -1;
        euf.unite(6 * i + s, 6 * g.tet + edge_slot(pa, pb), rel);
      }
    }
  if (euf.clash) throw std::invalid_argument("edge glued to itself reversed");
  t.edge_class.assign(T, {});
  t.edge_sign.assign(T, {});
  t.nedges = 0;
  t.edge_rep.clear();
  // Scan order is lexicographic, so the first instance of each class is its
  // canonical representative; signs are re-anchored there.
  std::vector<int> root_id(6 * T, -1), rep_sign(6 * T, 0);
  for (int i = 0; i < T; ++i)
    for (int s = 0; s < 6; ++s) {
      auto [r, sg] = euf.find(6 * i + s);
      if (root_id[r] < 0) {
        root_id[r] = t.nedges++;
        t.edge_rep.push_back({i, s});
        rep_sign[r] = sg;
      }
      t.edge_class[i][s] = root_id[r];
      t.edge_sign[i][s] = sg * rep_sign[r];
    }

  // Face classes.
  t.face_class.assign(T, {});
  t.face_rep.clear();
  t.nfaces = 0;
  for (int i = 0; i < T; ++i)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = t.glue[i][f];
      if (std::pair(g.tet, g.face) < std::pair(i, f)) {
        t.face_class[i][f] = t.face_class[g.tet][g.face];
      } else {
        t.face_class[i][f] = t.nfaces++;
        t.face_rep.push_back({i, f});
      }
    }

  // Every edge link is one cycle through all its corners.
  t.edge_valence.assign(t.nedges, 0);
  for (int i = 0; i < T; ++i)
    for (int s = 0; s < 6; ++s) ++t.edge_valence[t.edge_class[i][s]];
  for (int e = 0; e < t.nedges; ++e)
    if (int(edge_walk(t, e).size()) != t.edge_valence[e])
      throw std::invalid_argument("bad edge link");

  // Vertex classes.
  UF vuf(4 * T);
  for (int i = 0; i < T; ++i)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = t.glue[i][f];
      for (int v = 0; v < 4; ++v)
        if (v != f) vuf.unite(4 * i + v, 4 * g.tet + g.perm[v]);
    }
  t.vertex_class.assign(T, {});
  t.nverts = 0;
  std::vector<int> vroot_id(4 * T, -1);
  for (int i = 0; i < T; ++i)
    for (int v = 0; v < 4; ++v) {
      int r = vuf.find(4 * i + v);
      if (vroot_id[r] < 0) vroot_id[r] = t.nverts++;
      t.vertex_class[i][v] = vroot_id[r];
    }

  // Vertex links: each class's corner triangles are arc-connected by
  // construction, so the Euler characteristic alone sorts sphere from torus.
  std::vector<int> corners(t.nverts, 0);
  for (int i = 0; i < T; ++i)
    for (int v = 0; v < 4; ++v) ++corners[t.vertex_class[i][v]];
  std::vector<int> arcs(t.nverts, 0), ends(t.nverts, 0);
  for (int c = 0; c < t.nfaces; ++c) {
    auto [i, f] = t.face_rep[c];
    for (int v = 0; v < 4; ++v)
      if (v != f) ++arcs[t.vertex_class[i][v]];
  }
  for (int e = 0; e < t.nedges; ++e) {
    auto [i, s] = t.edge_rep[e];
    ++ends[t.vertex_class[i][kSlots[s][0]]];
    ++ends[t.vertex_class[i][kSlots[s][1]]];
  }
  t.vertex_ideal.assign(t.nverts, false);
  for (int v = 0; v < t.nverts; ++v) {
    int chi = ends[v] - arcs[v] + corners[v];
    if (chi == 0)
      t.vertex_ideal[v] = true;
    else if (chi != 2)
      throw std::invalid_argument("bad link");
  }
  bool any_ideal = t.ideal();
  if (any_ideal) {
    for (int v = 0; v < t.nverts; ++v)
      if (!t.vertex_ideal[v]) throw std::invalid_argument("mixed ideal and material vertices");
  } else if (t.nverts != 1) {
    throw std::invalid_argument("closed triangulation is not one-vertex");
  }
}

Triangulation parse_triangulation(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    lines.push_back(line.substr(a, b - a + 1));
  }
  if (lines.empty() || lines[0] != "tri v1") throw std::invalid_argument("missing tri header");
  Triangulation t;
  std::vector<int> declared_ideal;
  std::vector<std::array<bool, 4>> seen;
  for (size_t li = 1; li < lines.size(); ++li) {
    std::istringstream ls(lines[li]);
    std::string kw;
    ls >> kw;
    if (kw == "tets") {
      if (t.ntets != 0 || !(ls >> t.ntets) || t.ntets <= 0)
        throw std::invalid_argument("bad tets line");
      t.glue.assign(t.ntets, {});
      seen.assign(t.ntets, {});
    } else if (kw == "glue") {
      int a, f, b, f2;
      std::string ps;
      if (t.ntets == 0 || !(ls >> a >> f >> b >> f2 >> ps) || ps.size() != 4)
        throw std::invalid_argument("bad glue line");
      if (a < 0 || a >= t.ntets || b < 0 || b >= t.ntets || f < 0 || f > 3 || f2 < 0 || f2 > 3)
        throw std::invalid_argument("bad glue line");
      Perm p{};
      for (int i = 0; i < 4; ++i) {
        if (ps[i] < '0' || ps[i] > '3') throw std::invalid_argument("bad glue line");
        p[i] = ps[i] - '0';
      }
      if (!is_perm(p) || p[f] != f2) throw std::invalid_argument("bad glue line");
      if (seen[a][f] || seen[b][f2]) throw std::invalid_argument("face glued twice");
      seen[a][f] = true;
      t.glue[a][f] = {b, f2, p};
      seen[b][f2] = true;
      t.glue[b][f2] = {a, f, perm_inverse(p)};
    } else if (kw == "ideal") {
      int v;
      if (!(ls >> v) || v < 0) throw std::invalid_argument("bad ideal line");
      declared_ideal.push_back(v);
    } else {
      throw std::invalid_argument("unknown line: " + kw);
    }
  }
  if (t.ntets == 0) throw std::invalid_argument("missing tets line");
  validate_triangulation(t);
  std::vector<int> computed;
  for (int v = 0; v < t.nverts; ++v)
    if (t.vertex_ideal[v]) computed.push_back(v);
  std::sort(declared_ideal.begin(), declared_ideal.end());
  if (declared_ideal != computed) throw std::invalid_argument("ideal declaration mismatch");
  return t;
}

namespace {

Perm perm_compose(const Perm& p, const Perm& q) {
  // (p o q)[i] = p[q[i]]
  Perm r{};
  for (int i = 0; i < 4; ++i) r[i] = p[q[i]];
  return r;
}

constexpr std::array<Perm, 24> all_perms() {
  std::array<Perm, 24> ps{};
  int n = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d)
          if (a != b && a != c && a != d && b != c && b != d && c != d) ps[n++] = {a, b, c, d};
  return ps;
}

struct Labeling {
  std::vector<int> idx;    // old tet -> canonical index
  std::vector<Perm> vmap;  // old vertex -> canonical vertex
};

// Breadth-first relabeling from one seed; tree gluings become the identity
// permutation, which pins every later label.
std::pair<std::string, Labeling> canonical_candidate(const Triangulation& t, int t0,
                                                     const Perm& p0) {
  Labeling lab;
  lab.idx.assign(t.ntets, -1);
  lab.vmap.assign(t.ntets, {});
  lab.idx[t0] = 0;
  lab.vmap[t0] = p0;
  std::vector<int> order = {t0};
  for (size_t qi = 0; qi < order.size(); ++qi) {
    int i = order[qi];
    // Visit faces in canonical label order.
    Perm inv = perm_inverse(lab.vmap[i]);
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = t.glue[i][inv[f]];
      if (lab.idx[g.tet] < 0) {
        lab.idx[g.tet] = int(order.size());
        lab.vmap[g.tet] = perm_compose(lab.vmap[i], perm_inverse(g.perm));
        order.push_back(g.tet);
      }
    }
  }
  std::ostringstream enc;
  enc << t.ntets << ";";
  for (int k = 0; k < t.ntets; ++k) {
    int i = order[k];
    Perm inv = perm_inverse(lab.vmap[i]);
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = t.glue[i][inv[f]];
      Perm pn = perm_compose(lab.vmap[g.tet], perm_compose(g.perm, inv));
      enc << lab.idx[g.tet] << "," << pn[f];
      for (int v : pn) enc << v;
      enc << ";";
    }
  }
  return {enc.str(), lab};
}

std::pair<std::string, Labeling> canonical_best(const Triangulation& t) {
  std::optional<std::pair<std::string, Labeling>> best;
  for (int t0 = 0; t0 < t.ntets; ++t0)
    for (const Perm& p0 : all_perms()) {
      auto cand = canonical_candidate(t, t0, p0);
      if (!best || cand.first < best->first) best = cand;
    }
  return *best;
}

// Edges -> vertices. Closed case: one vertex, zero map. Ideal case: link
// vertices of the truncated complex, columns are long edges then link arcs.
IntMatrix boundary1(const Triangulation& t) {
  if (!t.ideal()) return IntMatrix(1, t.nedges);
  IntMatrix d(2 * t.nedges, t.nedges + t.nlink_arcs());
  for (int e = 0; e < t.nedges; ++e) {
    d.at(2 * e + 1, e) += 1;
    d.at(2 * e + 0, e) -= 1;
  }
  for (int c = 0; c < t.nfaces; ++c) {
    auto [i, f] = t.face_rep[c];
    std::array<int, 3> w{};
    int k = 0;
    for (int v = 0; v < 4; ++v)
      if (v != f) w[k++] = v;
    for (int cr = 0; cr < 3; ++cr) {
      int v = w[cr], x = -1, y = -1;
      for (int u : w)
        if (u != v) (x < 0 ? x : y) = u;
      int col = t.nedges + 3 * c + cr;
      d.at(t.link_vertex(i, v, y), col) += 1;
      d.at(t.link_vertex(i, v, x), col) -= 1;
    }
  }
  return d;
}

// Faces -> edges; ideal case appends the link triangles as extra 2-cells.
IntMatrix boundary2(const Triangulation& t) {
  bool ideal = t.ideal();
  int ne = ideal ? t.nedges + t.nlink_arcs() : t.nedges;
  int nf = ideal ? t.nfaces + 4 * t.ntets : t.nfaces;
  IntMatrix d(ne, nf);
  for (int c = 0; c < t.nfaces; ++c) {
    auto [i, f] = t.face_rep[c];
    std::array<int, 3> w{};
    int k = 0;
    for (int v = 0; v < 4; ++v)
      if (v != f) w[k++] = v;
    auto add_edge = [&](int a, int b, int sgn) {
      int s = edge_slot(a, b);
      d.at(t.edge_class[i][s], c) += sgn * t.edge_sign[i][s];
    };
    add_edge(w[0], w[1], 1);
    add_edge(w[1], w[2], 1);
    add_edge(w[0], w[2], -1);
    if (ideal) {
      d.at(t.nedges + 3 * c + 1, c) += 1;
      d.at(t.nedges + 3 * c + 2, c) -= 1;
      d.at(t.nedges + 3 * c + 0, c) -= 1;
    }
  }
  if (ideal)
    for (int i = 0; i < t.ntets; ++i)
      for (int v = 0; v < 4; ++v) {
        int col = t.nfaces + 4 * i + v;
        std::array<int, 3> x{};
        int k = 0;
        for (int u = 0; u < 4; ++u)
          if (u != v) x[k++] = u;
        auto add_arc = [&](int f, int sgn) {
          auto [id, s] = t.link_arc(i, f, v);
          d.at(t.nedges + id, col) += sgn * s;
        };
        add_arc(x[2], 1);
        add_arc(x[0], 1);
        add_arc(x[1], -1);
      }
  return d;
}

// Spanning tree of the dual graph, rooted at tet 0: marks tree face classes
// and the crossing order used by both the presentation and class pairings.
struct DualTree {
  std::vector<char> in_tree;   // per face class
  std::vector<int> gen_index;  // per face class, -1 on tree faces
  int ngens = 0;
};

DualTree dual_tree(const Triangulation& t) {
  DualTree dt;
  dt.in_tree.assign(t.nfaces, 0);
  std::vector<char> visited(t.ntets, 0);
  visited[0] = 1;
  std::vector<int> queue = {0};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int i = queue[qi];
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = t.glue[i][f];
      if (!visited[g.tet]) {
        visited[g.tet] = 1;
        dt.in_tree[t.face_class[i][f]] = 1;
        queue.push_back(g.tet);
      }
    }
  }
  dt.gen_index.assign(t.nfaces, -1);
  for (int c = 0; c < t.nfaces; ++c)
    if (!dt.in_tree[c]) dt.gen_index[c] = dt.ngens++;
  return dt;
}

}  // namespace

AbelianInvariants tri_homology(const Triangulation& t) {
  return chain_homology(boundary1(t), boundary2(t));
}

Presentation tri_fundamental_group(const Triangulation& t) {
  DualTree dt = dual_tree(t);
  Presentation p;
  p.gens = default_gen_names(dt.ngens);
  for (int e = 0; e < t.nedges; ++e) {
    Word w;
    for (const WalkStep& st : edge_walk(t, e)) {
      int c = t.face_class[st.tet][st.exit];
      if (dt.in_tree[c]) continue;
      bool outward = t.face_rep[c] == std::pair(st.tet, st.exit);
      w.append(outward ? dt.gen_index[c] + 1 : -(dt.gen_index[c] + 1));
    }
    if (!w.empty()) p.rels.push_back(w.cyclically_reduced());
  }
  return p;
}

bool is_cocycle(const Triangulation& t, const Cocycle& c) {
  std::vector<Int> v = cocycle_to_vector(c);
  IntMatrix d2 = boundary2(t);
  if (int(v.size()) != d2.rows()) return false;
  std::vector<Int> sums = d2.transpose().apply(v);
  for (const Int& s : sums)
    if (s != 0) return false;
  return true;
}

CocycleSpace cocycle_space(const Triangulation& t) {
  CocycleSpace cs;
  cs.z1 = kernel_basis(boundary2(t).transpose());
  if (t.ideal())
    cs.b1 = row_lattice_basis(boundary1(t)).transpose();
  else
    cs.b1 = IntMatrix(t.nedges, 0);
  cs.h1_rank = cs.z1.cols() - cs.b1.cols();
  return cs;
}

Cocycle cocycle_from_vector(const Triangulation& t, const std::vector<Int>& v) {
  int n = t.ideal() ? t.nedges + t.nlink_arcs() : t.nedges;
  if (int(v.size()) != n) throw std::invalid_argument("cocycle vector size mismatch");
  Cocycle c;
  c.edge.assign(v.begin(), v.begin() + t.nedges);
  c.link.assign(v.begin() + t.nedges, v.end());
  return c;
}

std::vector<Int> cocycle_to_vector(const Cocycle& c) {
  std::vector<Int> v = c.edge;
  v.insert(v.end(), c.link.begin(), c.link.end());
  return v;
}

std::vector<std::vector<Int>> tet_lifts(const Triangulation& t, const Cocycle& c) {
  std::vector<std::vector<Int>> lifts(t.ntets);
  if (!t.ideal()) {
    for (int i = 0; i < t.ntets; ++i) {
      std::vector<Int> l(4);
      for (int v = 1; v < 4; ++v) {
        int s = edge_slot(0, v);
        l[v] = c.edge[t.edge_class[i][s]] * t.edge_sign[i][s];
      }
      lifts[i] = l;
    }
    return lifts;
  }
  for (int i = 0; i < t.ntets; ++i) {
    // Walk the 18 boundary edges of the truncated tetrahedron from a base
    // corner; tree order is fixed so the extension is linear in c.
    std::vector<Int> l(12);
    std::vector<char> done(12, 0);
    done[0] = 1;
    struct Hop {
      int from, to;
      Int val;
    };
    std::vector<Hop> hops;
    for (int s = 0; s < 6; ++s) {
      auto [v, w] = kSlots[s];
      Int val = c.edge[t.edge_class[i][s]] * t.edge_sign[i][s];
      hops.push_back({corner_slot(v, w), corner_slot(w, v), val});
    }
    for (int v = 0; v < 4; ++v)
      for (int f = 0; f < 4; ++f) {
        if (f == v) continue;
        int x = -1, y = -1;
        for (int u = 0; u < 4; ++u)
          if (u != v && u != f) (x < 0 ? x : y) = u;
        auto [arc, sgn] = t.link_arc(i, f, v);
        hops.push_back({corner_slot(v, x), corner_slot(v, y), c.link[arc] * sgn});
      }
    bool progress = true;
    while (progress) {
      progress = false;
      for (const Hop& h : hops) {
        if (done[h.from] && !done[h.to]) {
          l[h.to] = l[h.from] + h.val;
          done[h.to] = progress = true;
        } else if (done[h.to] && !done[h.from]) {
          l[h.from] = l[h.to] - h.val;
          done[h.from] = progress = true;
        }
      }
    }
    lifts[i] = l;
  }
  return lifts;
}

std::vector<Int> face_shifts(const Triangulation& t, const Cocycle& c) {
  std::vector<std::vector<Int>> lifts = tet_lifts(t, c);
  std::vector<Int> s(t.nfaces);
  for (int cl = 0; cl < t.nfaces; ++cl) {
    auto [i, f] = t.face_rep[cl];
    const Gluing& g = t.glue[i][f];
    bool first = true;
    for (int v = 0; v < 4; ++v) {
      if (v == f) continue;
      if (!t.ideal()) {
        Int d = lifts[i][v] - lifts[g.tet][g.perm[v]];
        if (first) s[cl] = d, first = false;
        else if (s[cl] != d) throw std::logic_error("not a cocycle");
      } else {
        for (int x = 0; x < 4; ++x) {
          if (x == f || x == v) continue;
          Int d = lifts[i][corner_slot(v, x)] - lifts[g.tet][corner_slot(g.perm[v], g.perm[x])];
          if (first) s[cl] = d, first = false;
          else if (s[cl] != d) throw std::logic_error("not a cocycle");
        }
      }
    }
  }
  return s;
}

std::vector<Int> pair_with_generators(const Triangulation& t, const Cocycle& c) {
  std::vector<Int> s = face_shifts(t, c);
  DualTree dt = dual_tree(t);
  std::vector<Int> pot(t.ntets);
  std::vector<char> visited(t.ntets, 0);
  visited[0] = 1;
  std::vector<int> queue = {0};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int i = queue[qi];
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = t.glue[i][f];
      int cl = t.face_class[i][f];
      if (dt.in_tree[cl] && !visited[g.tet]) {
        visited[g.tet] = 1;
        bool outward = t.face_rep[cl] == std::pair(i, f);
        pot[g.tet] = pot[i] + (outward ? s[cl] : -s[cl]);
        queue.push_back(g.tet);
      }
    }
  }
  std::vector<Int> evals(dt.ngens);
  for (int cl = 0; cl < t.nfaces; ++cl) {
    if (dt.in_tree[cl]) continue;
    auto [i, f] = t.face_rep[cl];
    evals[dt.gen_index[cl]] = pot[i] + s[cl] - pot[t.glue[i][f].tet];
  }
  return evals;
}

std::vector<Int> class_of_cocycle(const Triangulation& t, const AbelianizationMap& phi,
                                  const Cocycle& c) {
  std::vector<Int> evals = pair_with_generators(t, c);
  if (int(evals.size()) != phi.images.cols())
    throw std::invalid_argument("abelianization map does not match triangulation");
  auto sol = solve_integral(phi.images.transpose(), evals);
  if (!sol) throw std::logic_error("cocycle evaluation is not a homology functional");
  return *sol;
}

Cocycle cocycle_of_class(const Triangulation& t, const AbelianizationMap& phi,
                         const std::vector<Int>& dual_coords) {
  CocycleSpace cs = cocycle_space(t);
  IntMatrix pairings(phi.b1, cs.z1.cols());
  for (int j = 0; j < cs.z1.cols(); ++j) {
    std::vector<Int> col(cs.z1.rows());
    for (int i = 0; i < cs.z1.rows(); ++i) col[i] = cs.z1.at(i, j);
    std::vector<Int> cls = class_of_cocycle(t, phi, cocycle_from_vector(t, col));
    for (int i = 0; i < phi.b1; ++i) pairings.at(i, j) = cls[i];
  }
  auto y = solve_integral(pairings, dual_coords);
  if (!y) throw std::logic_error("class is not realized by an integral cocycle");
  std::vector<Int> v = cs.z1.apply(*y);
  return cocycle_from_vector(t, v);
}

Triangulation cyclic_cover(const Triangulation& t, const Cocycle& c, int n) {
  if (n < 1) throw std::invalid_argument("cover degree must be positive");
  std::vector<Int> s = face_shifts(t, c);
  std::vector<int> smod(t.nfaces);
  for (int cl = 0; cl < t.nfaces; ++cl) smod[cl] = int(((s[cl] % n) + n) % n);
  int T = t.ntets;
  Triangulation cover;
  cover.ntets = n * T;
  cover.glue.assign(cover.ntets, {});
  for (int i = 0; i < T; ++i)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = t.glue[i][f];
      int cl = t.face_class[i][f];
      int d = (t.face_rep[cl] == std::pair(i, f)) ? smod[cl] : n - smod[cl];
      for (int k = 0; k < n; ++k) {
        int k2 = (k + d) % n;
        cover.glue[i + T * k][f] = {g.tet + T * k2, g.face, g.perm};
      }
    }
  validate_triangulation(cover);
  return cover;
}

std::string serialize_triangulation(const Triangulation& t) {
  std::ostringstream out;
  out << "tri v1\n" << "tets " << t.ntets << "\n";
  for (int i = 0; i < t.ntets; ++i)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = t.glue[i][f];
      if (std::pair(i, f) < std::pair(g.tet, g.face)) {
        out << "glue " << i << " " << f << " " << g.tet << " " << g.face << " ";
        for (int v : g.perm) out << v;
        out << "\n";
      }
    }
  for (int v = 0; v < t.nverts; ++v)
    if (t.vertex_ideal[v]) out << "ideal " << v << "\n";
  return out.str();
}

std::string canonical_form(const Triangulation& t) { return canonical_best(t).first; }

std::optional<Relabeling> tri_isomorphism(const Triangulation& a, const Triangulation& b) {
  if (a.ntets != b.ntets) return std::nullopt;
  auto ca = canonical_best(a);
  auto cb = canonical_best(b);
  if (ca.first != cb.first) return std::nullopt;
  std::vector<int> binv(b.ntets);  // canonical index -> b tet
  for (int i = 0; i < b.ntets; ++i) binv[cb.second.idx[i]] = i;
  Relabeling r;
  r.tet.resize(a.ntets);
  r.perm.resize(a.ntets);
  for (int i = 0; i < a.ntets; ++i) {
    r.tet[i] = binv[ca.second.idx[i]];
    r.perm[i] = perm_compose(perm_inverse(cb.second.vmap[r.tet[i]]), ca.second.vmap[i]);
  }
  return r;
}

namespace {

// Directed value of the edge instance (tet, v -> w) under c.
Int directed_edge_value(const Triangulation& t, const Cocycle& c, int tet, int v, int w) {
  int s = edge_slot(std::min(v, w), std::max(v, w));
  Int low_high = c.edge[t.edge_class[tet][s]] * t.edge_sign[tet][s];
  return v < w ? low_high : -low_high;
}

// Directed value of the link arc at corner v of face instance (tet, f), read
// from the end on edge (v, x) to the end on edge (v, y).
Int directed_arc_value(const Triangulation& t, const Cocycle& c, int tet, int f, int v, int x,
                       int y) {
  auto [arc, sg] = t.link_arc(tet, f, v);
  Int low_high = c.link[arc] * sg;
  return x < y ? low_high : -low_high;
}

}  // namespace

Cocycle relabel_cocycle(const Triangulation& a, const Triangulation& b, const Relabeling& r,
                        const Cocycle& c) {
  Cocycle out;
  out.edge.assign(b.nedges, 0);
  out.link.assign(b.ideal() ? b.nlink_arcs() : 0, 0);
  std::vector<char> edge_set(b.nedges, 0);
  for (int i = 0; i < a.ntets; ++i) {
    const Perm& q = r.perm[i];
    int tb = r.tet[i];
    for (int s = 0; s < 6; ++s) {
      auto [v, w] = slot_vertices(s);
      int bs = edge_slot(std::min(q[v], q[w]), std::max(q[v], q[w]));
      int cls = b.edge_class[tb][bs];
      if (edge_set[cls]) continue;
      edge_set[cls] = 1;
      Int dir = directed_edge_value(a, c, i, v, w);  // along v -> w
      Int low_high = q[v] < q[w] ? dir : -dir;
      out.edge[cls] = low_high * b.edge_sign[tb][bs];
    }
  }
  if (b.ideal()) {
    std::vector<char> arc_set(b.nlink_arcs(), 0);
    for (int i = 0; i < a.ntets; ++i) {
      const Perm& q = r.perm[i];
      int tb = r.tet[i];
      for (int f = 0; f < 4; ++f)
        for (int v = 0; v < 4; ++v) {
          if (v == f) continue;
          auto [arc, sg] = b.link_arc(tb, q[f], q[v]);
          if (arc_set[arc]) continue;
          arc_set[arc] = 1;
          int x = -1, y = -1;  // the two face corners besides v
          for (int u = 0; u < 4; ++u)
            if (u != f && u != v) (x < 0 ? x : y) = u;
          Int dir = directed_arc_value(a, c, i, f, v, x, y);  // end on (v,x) -> end on (v,y)
          Int low_high = q[x] < q[y] ? dir : -dir;
          out.link[arc] = low_high * sg;
        }
    }
  }
  return out;
}

Cocycle TransportMap::apply(const Triangulation& target, const Cocycle& c) const {
  std::vector<Int> v(c.edge);
  v.insert(v.end(), c.link.begin(), c.link.end());
  if (int(v.size()) != mat.cols()) throw std::invalid_argument("cocycle size mismatch");
  return cocycle_from_vector(target, mat.apply(v));
}

TransportMap compose(const TransportMap& first, const TransportMap& second) {
  return {second.mat.mul(first.mat)};
}

namespace {

// Location of each surviving old face instance inside the rebuilt complex.
// Removed instances stay at tet -1 and must only be partnered with removed
// instances.
struct Handles {
  std::vector<std::array<int, 4>> tet;
  std::vector<std::array<Perm, 4>> vmap;  // old tet labels -> new labels
};

void install_external(const Triangulation& told, const Handles& h, Triangulation& tn) {
  for (int o = 0; o < told.ntets; ++o)
    for (int fo = 0; fo < 4; ++fo) {
      if (h.tet[o][fo] < 0) continue;
      const Gluing& g = told.glue[o][fo];
      if (h.tet[g.tet][g.face] < 0) throw std::logic_error("dangling face handle");
      const Perm& va = h.vmap[o][fo];
      const Perm& vb = h.vmap[g.tet][g.face];
      Perm pn = perm_compose(vb, perm_compose(g.perm, perm_inverse(va)));
      tn.glue[h.tet[o][fo]][va[fo]] = {h.tet[g.tet][g.face], pn[va[fo]], pn};
    }
}

TransportMap matrix_of(const Triangulation& told, const Triangulation& tn,
                       const std::function<Cocycle(const Cocycle&)>& f) {
  int ncols = told.nedges + (told.ideal() ? told.nlink_arcs() : 0);
  int nrows = tn.nedges + (tn.ideal() ? tn.nlink_arcs() : 0);
  IntMatrix m(nrows, ncols);
  for (int j = 0; j < ncols; ++j) {
    std::vector<Int> ej(ncols, 0);
    ej[j] = 1;
    std::vector<Int> im = cocycle_to_vector(f(cocycle_from_vector(told, ej)));
    for (int i = 0; i < nrows; ++i) m.at(i, j) = im[i];
  }
  return {m};
}

struct Ctx23 {
  int t, f, tp, fp;
  Perm p;
  std::array<int, 3> u;     // vertices of the split face, ascending, in t labels
  int base;                 // id of the first replacement tet
  std::array<Perm, 3> mt;   // new labels -> old t labels
  std::array<Perm, 3> mtp;  // new labels -> old tp labels
  std::vector<int> newid;   // old tet -> new id, -1 for t and tp
  std::vector<int> oldof;   // new id -> old tet for the surviving ones
};

Ctx23 make_ctx23(const Triangulation& told, int t, int f) {
  const Gluing& g = told.glue[t][f];
  if (g.tet == t) throw std::invalid_argument("face joins a tetrahedron to itself");
  Ctx23 cx;
  cx.t = t;
  cx.f = f;
  cx.tp = g.tet;
  cx.fp = g.face;
  cx.p = g.perm;
  int k = 0;
  for (int v = 0; v < 4; ++v)
    if (v != f) cx.u[k++] = v;
  cx.newid.assign(told.ntets, -1);
  int n = 0;
  for (int o = 0; o < told.ntets; ++o)
    if (o != t && o != cx.tp) cx.newid[o] = n++;
  cx.base = n;
  cx.oldof.assign(n, -1);
  for (int o = 0; o < told.ntets; ++o)
    if (cx.newid[o] >= 0) cx.oldof[cx.newid[o]] = o;
  // Replacement tet i: 0 is the apex from t, 1 the apex from tp, 2 and 3 the
  // face vertices after u[i], cyclically.
  for (int i = 0; i < 3; ++i) {
    cx.mt[i] = {cx.f, cx.u[i], cx.u[(i + 1) % 3], cx.u[(i + 2) % 3]};
    cx.mtp[i] = {cx.p[cx.u[i]], cx.fp, cx.p[cx.u[(i + 1) % 3]], cx.p[cx.u[(i + 2) % 3]]};
  }
  return cx;
}

Triangulation build_23(const Triangulation& told, const Ctx23& cx) {
  Triangulation tn;
  tn.ntets = told.ntets + 1;
  tn.glue.assign(tn.ntets, {});
  Handles h;
  h.tet.assign(told.ntets, {-1, -1, -1, -1});
  h.vmap.assign(told.ntets, {});
  for (int o = 0; o < told.ntets; ++o) {
    if (cx.newid[o] < 0) continue;
    for (int fo = 0; fo < 4; ++fo) {
      h.tet[o][fo] = cx.newid[o];
      h.vmap[o][fo] = {0, 1, 2, 3};
    }
  }
  for (int i = 0; i < 3; ++i) {
    h.tet[cx.t][cx.u[i]] = cx.base + i;
    h.vmap[cx.t][cx.u[i]] = perm_inverse(cx.mt[i]);
    h.tet[cx.tp][cx.p[cx.u[i]]] = cx.base + i;
    h.vmap[cx.tp][cx.p[cx.u[i]]] = perm_inverse(cx.mtp[i]);
  }
  install_external(told, h, tn);
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3;
    tn.glue[cx.base + i][2] = {cx.base + j, 3, {0, 1, 3, 2}};
    tn.glue[cx.base + j][3] = {cx.base + i, 2, {0, 1, 3, 2}};
  }
  validate_triangulation(tn);
  return tn;
}

// Single-valued lift over the bipyramid formed by the two old tetrahedra.
// Nodes are vertices (closed) or truncated corners (ideal), t side first.
std::vector<Int> union_lift_23(const Triangulation& told, const Ctx23& cx, const Cocycle& c) {
  struct Hop {
    int from, to;
    Int val;
  };
  std::vector<Hop> hops;
  int n;
  if (!told.ideal()) {
    n = 8;
    for (int side = 0; side < 2; ++side) {
      int tet = side ? cx.tp : cx.t;
      for (int s = 0; s < 6; ++s) {
        auto [v, w] = kSlots[s];
        hops.push_back({4 * side + v, 4 * side + w, directed_edge_value(told, c, tet, v, w)});
      }
    }
    for (int v = 0; v < 4; ++v)
      if (v != cx.f) hops.push_back({v, 4 + cx.p[v], 0});
  } else {
    n = 24;
    for (int side = 0; side < 2; ++side) {
      int tet = side ? cx.tp : cx.t;
      for (int s = 0; s < 6; ++s) {
        auto [v, w] = kSlots[s];
        hops.push_back({12 * side + corner_slot(v, w), 12 * side + corner_slot(w, v),
                        directed_edge_value(told, c, tet, v, w)});
      }
      for (int v = 0; v < 4; ++v)
        for (int fc = 0; fc < 4; ++fc) {
          if (fc == v) continue;
          int x = -1, y = -1;
          for (int u2 = 0; u2 < 4; ++u2)
            if (u2 != v && u2 != fc) (x < 0 ? x : y) = u2;
          hops.push_back({12 * side + corner_slot(v, x), 12 * side + corner_slot(v, y),
                          directed_arc_value(told, c, tet, fc, v, x, y)});
        }
    }
    for (int v = 0; v < 4; ++v) {
      if (v == cx.f) continue;
      for (int w = 0; w < 4; ++w) {
        if (w == cx.f || w == v) continue;
        hops.push_back({corner_slot(v, w), 12 + corner_slot(cx.p[v], cx.p[w]), 0});
      }
    }
  }
  std::vector<Int> val(n, 0);
  std::vector<char> done(n, 0);
  done[0] = 1;
  bool progress = true;
  while (progress) {
    progress = false;
    for (const Hop& h : hops) {
      if (done[h.from] && !done[h.to]) {
        val[h.to] = val[h.from] + h.val;
        done[h.to] = progress = true;
      } else if (done[h.to] && !done[h.from]) {
        val[h.from] = val[h.to] - h.val;
        done[h.from] = progress = true;
      }
    }
  }
  return val;
}

// Lift at a vertex of replacement tet base+i, closed case. Both apexes carry
// their bipyramid values; the axis value is their difference.
Int vlift_new_23(const std::vector<Int>& ul, const Ctx23& cx, int i, int v) {
  if (v == 0) return ul[cx.f];
  if (v == 1) return ul[4 + cx.fp];
  return ul[cx.mt[i][v]];
}

// Lift at truncated corner (v toward w) of replacement tet base+i, ideal case.
// The two corners on the new axis are fresh link vertices, gauged to zero.
Int lift_new_23(const std::vector<Int>& ul, const Ctx23& cx, int i, int v, int w) {
  if (v == 0 && w == 1) return 0;
  if (v == 1 && w == 0) return 0;
  if (v == 0) return ul[corner_slot(cx.f, cx.mt[i][w])];
  if (w == 0) return ul[corner_slot(cx.mt[i][v], cx.f)];
  if (v == 1) return ul[12 + corner_slot(cx.fp, cx.mtp[i][w])];
  if (w == 1) return ul[12 + corner_slot(cx.mtp[i][v], cx.fp)];
  return ul[corner_slot(cx.mt[i][v], cx.mt[i][w])];
}

Cocycle transport_23(const Triangulation& told, const Ctx23& cx, const Triangulation& tn,
                     const Cocycle& c) {
  std::vector<Int> ul = union_lift_23(told, cx, c);
  bool ideal = told.ideal();
  Cocycle out;
  out.edge.assign(tn.nedges, 0);
  out.link.assign(ideal ? tn.nlink_arcs() : 0, 0);
  for (int e = 0; e < tn.nedges; ++e) {
    auto [rt, rs] = tn.edge_rep[e];
    auto [v, w] = kSlots[rs];
    Int low_high;
    if (rt < cx.base) {
      low_high = directed_edge_value(told, c, cx.oldof[rt], v, w);
    } else if (!ideal) {
      low_high = vlift_new_23(ul, cx, rt - cx.base, w) - vlift_new_23(ul, cx, rt - cx.base, v);
    } else {
      low_high =
          lift_new_23(ul, cx, rt - cx.base, w, v) - lift_new_23(ul, cx, rt - cx.base, v, w);
    }
    out.edge[e] = low_high * tn.edge_sign[rt][rs];
  }
  if (ideal) {
    for (int fc = 0; fc < tn.nfaces; ++fc) {
      auto [rt, rf] = tn.face_rep[fc];
      for (int v = 0; v < 4; ++v) {
        if (v == rf) continue;
        int x = -1, y = -1;
        for (int u2 = 0; u2 < 4; ++u2)
          if (u2 != rf && u2 != v) (x < 0 ? x : y) = u2;
        auto [arc, sg] = tn.link_arc(rt, rf, v);
        Int dir;
        if (rt < cx.base)
          dir = directed_arc_value(told, c, cx.oldof[rt], rf, v, x, y);
        else
          dir = lift_new_23(ul, cx, rt - cx.base, v, y) - lift_new_23(ul, cx, rt - cx.base, v, x);
        out.link[arc] = dir * sg;
      }
    }
  }
  return out;
}

struct Ctx32 {
  std::array<WalkStep, 3> st;  // the three corners around the edge, walk order
  int n0, n1;                  // replacement tets: tail apex side, head side
  std::vector<int> newid, oldof;
  std::array<Perm, 3> ma, mb;  // external face j of n0 / n1 -> old labels
};

// Shared vertex names around the axis: u_j sits at label st[j].exit within
// tet j and at label st[j-1].enter within tet j-1.
Ctx32 make_ctx32(const Triangulation& told, int e) {
  std::vector<WalkStep> walk = edge_walk(told, e);
  if (walk.size() != 3) throw std::invalid_argument("edge valence is not 3");
  Ctx32 cx;
  for (int i = 0; i < 3; ++i) cx.st[i] = walk[i];
  if (cx.st[0].tet == cx.st[1].tet || cx.st[0].tet == cx.st[2].tet ||
      cx.st[1].tet == cx.st[2].tet)
    throw std::invalid_argument("edge tetrahedra not distinct");
  cx.newid.assign(told.ntets, -1);
  int n = 0;
  for (int o = 0; o < told.ntets; ++o)
    if (o != cx.st[0].tet && o != cx.st[1].tet && o != cx.st[2].tet) cx.newid[o] = n++;
  cx.n0 = n;
  cx.n1 = n + 1;
  cx.oldof.assign(n, -1);
  for (int o = 0; o < told.ntets; ++o)
    if (cx.newid[o] >= 0) cx.oldof[cx.newid[o]] = o;
  // Face j of the replacement pair lies in old tet j+1, opposite an axis end.
  for (int j = 0; j < 3; ++j) {
    const WalkStep& s = cx.st[(j + 1) % 3];
    Perm m{}, mp{};
    m[j] = s.b;
    m[(j + 1) % 3] = s.exit;
    m[(j + 2) % 3] = s.enter;
    m[3] = s.a;
    mp[j] = s.a;
    mp[(j + 1) % 3] = s.exit;
    mp[(j + 2) % 3] = s.enter;
    mp[3] = s.b;
    cx.ma[j] = m;
    cx.mb[j] = mp;
  }
  return cx;
}

Triangulation build_32(const Triangulation& told, const Ctx32& cx) {
  Triangulation tn;
  tn.ntets = told.ntets - 1;
  tn.glue.assign(tn.ntets, {});
  Handles h;
  h.tet.assign(told.ntets, {-1, -1, -1, -1});
  h.vmap.assign(told.ntets, {});
  for (int o = 0; o < told.ntets; ++o) {
    if (cx.newid[o] < 0) continue;
    for (int fo = 0; fo < 4; ++fo) {
      h.tet[o][fo] = cx.newid[o];
      h.vmap[o][fo] = {0, 1, 2, 3};
    }
  }
  for (int j = 0; j < 3; ++j) {
    const WalkStep& s = cx.st[(j + 1) % 3];
    h.tet[s.tet][s.b] = cx.n0;
    h.vmap[s.tet][s.b] = perm_inverse(cx.ma[j]);
    h.tet[s.tet][s.a] = cx.n1;
    h.vmap[s.tet][s.a] = perm_inverse(cx.mb[j]);
  }
  install_external(told, h, tn);
  tn.glue[cx.n0][3] = {cx.n1, 3, {0, 1, 2, 3}};
  tn.glue[cx.n1][3] = {cx.n0, 3, {0, 1, 2, 3}};
  validate_triangulation(tn);
  return tn;
}

// Directed value along new labels v -> w of a replacement tet; every edge of
// the two new tets already exists in the old bipyramid.
Int old_directed_32(const Triangulation& told, const Ctx32& cx, const Cocycle& c, int side,
                    int v, int w) {
  Int sign = 1;
  if (v > w) {
    std::swap(v, w);
    sign = -1;
  }
  if (w == 3) {
    const WalkStep& s = cx.st[v];
    return sign * directed_edge_value(told, c, s.tet, s.exit, side == 0 ? s.a : s.b);
  }
  int j = (v == 0 && w == 1) ? 0 : (v == 1 ? 1 : 2);
  const WalkStep& s = cx.st[j];
  if (j == 2) return sign * directed_edge_value(told, c, s.tet, s.enter, s.exit);
  return sign * directed_edge_value(told, c, s.tet, s.exit, s.enter);
}

Cocycle transport_32(const Triangulation& told, const Ctx32& cx, const Triangulation& tn,
                     const Cocycle& c) {
  bool ideal = told.ideal();
  Cocycle out;
  out.edge.assign(tn.nedges, 0);
  out.link.assign(ideal ? tn.nlink_arcs() : 0, 0);
  for (int e = 0; e < tn.nedges; ++e) {
    auto [rt, rs] = tn.edge_rep[e];
    auto [v, w] = kSlots[rs];
    Int low_high;
    if (rt < cx.n0)
      low_high = directed_edge_value(told, c, cx.oldof[rt], v, w);
    else
      low_high = old_directed_32(told, cx, c, rt == cx.n0 ? 0 : 1, v, w);
    out.edge[e] = low_high * tn.edge_sign[rt][rs];
  }
  if (!ideal) return out;
  int inner = tn.face_class[cx.n0][3];
  for (int fc = 0; fc < tn.nfaces; ++fc) {
    if (fc == inner) continue;
    auto [rt, rf] = tn.face_rep[fc];
    for (int v = 0; v < 4; ++v) {
      if (v == rf) continue;
      int x = -1, y = -1;
      for (int u2 = 0; u2 < 4; ++u2)
        if (u2 != rf && u2 != v) (x < 0 ? x : y) = u2;
      auto [arc, sg] = tn.link_arc(rt, rf, v);
      Int dir;
      if (rt < cx.n0) {
        dir = directed_arc_value(told, c, cx.oldof[rt], rf, v, x, y);
      } else {
        const Perm& m = rt == cx.n0 ? cx.ma[rf] : cx.mb[rf];
        int tet = cx.st[(rf + 1) % 3].tet;
        dir = directed_arc_value(told, c, tet, m[rf], m[v], m[x], m[y]);
      }
      out.link[arc] = dir * sg;
    }
  }
  // Arcs on the one new internal face, forced by the corner conditions of the
  // tail-side tet.
  for (int j = 0; j < 3; ++j) {
    Int known = 0;
    int xs[3], k = 0;
    for (int u2 = 0; u2 < 4; ++u2)
      if (u2 != j) xs[k++] = u2;
    // Condition: +arc(xs[2]) + arc(xs[0]) - arc(xs[1]) = 0; xs[2] is face 3.
    auto [a0, s0] = tn.link_arc(cx.n0, xs[0], j);
    auto [a1, s1] = tn.link_arc(cx.n0, xs[1], j);
    auto [a3, s3] = tn.link_arc(cx.n0, 3, j);
    known = out.link[a0] * s0 - out.link[a1] * s1;
    out.link[a3] = -known * s3;
  }
  return out;
}

}  // namespace

MoveResult pachner_23(const Triangulation& t, int tet, int face) {
  Ctx23 cx = make_ctx23(t, tet, face);
  Triangulation tn = build_23(t, cx);
  TransportMap tm =
      matrix_of(t, tn, [&](const Cocycle& c) { return transport_23(t, cx, tn, c); });
  return {tn, tm};
}

MoveResult pachner_32(const Triangulation& t, int edge) {
  Ctx32 cx = make_ctx32(t, edge);
  Triangulation tn = build_32(t, cx);
  TransportMap tm =
      matrix_of(t, tn, [&](const Cocycle& c) { return transport_32(t, cx, tn, c); });
  return {tn, tm};
}

std::vector<std::pair<int, int>> valid_23_sites(const Triangulation& t) {
  std::vector<std::pair<int, int>> out;
  for (int c = 0; c < t.nfaces; ++c) {
    auto [i, f] = t.face_rep[c];
    if (t.glue[i][f].tet != i) out.emplace_back(i, f);
  }
  return out;
}

std::vector<int> valid_32_sites(const Triangulation& t) {
  std::vector<int> out;
  for (int e = 0; e < t.nedges; ++e) {
    if (t.edge_valence[e] != 3) continue;
    std::vector<WalkStep> walk = edge_walk(t, e);
    if (walk[0].tet != walk[1].tet && walk[0].tet != walk[2].tet && walk[1].tet != walk[2].tet)
      out.push_back(e);
  }
  return out;
}

}  // namespace normfib
