#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "normfib/fixtures.hpp"
#include "normfib/fox.hpp"
#include "normfib/group.hpp"
#include "normfib/laurent.hpp"
#include "normfib/tri.hpp"

using namespace normfib;

namespace {

using Perm4 = std::array<int, 4>;

Perm4 perm4_inv(const Perm4& p) {
  Perm4 q{};
  for (int i = 0; i < 4; ++i) q[p[i]] = i;
  return q;
}

// Install both directions of a gluing between instance a and instance b.
void pair_faces(Triangulation& t, int ta, int fa, int tb, int fb, const Perm4& p) {
  t.glue[ta][fa] = {tb, fb, p};
  t.glue[tb][fb] = {ta, fa, perm4_inv(p)};
}

Triangulation raw(int ntets) {
  Triangulation t;
  t.ntets = ntets;
  t.glue.assign(ntets, {});
  return t;
}

std::vector<Int> col_of(const IntMatrix& m, int j) {
  std::vector<Int> v(m.rows());
  for (int i = 0; i < m.rows(); ++i) v[i] = m.at(i, j);
  return v;
}

std::vector<Cocycle> z1_basis(const Triangulation& t, const CocycleSpace& cs) {
  std::vector<Cocycle> out;
  for (int j = 0; j < cs.z1.cols(); ++j) out.push_back(cocycle_from_vector(t, col_of(cs.z1, j)));
  return out;
}

AbelianInvariants group_h1(const Presentation& p) {
  AbelianizationMap phi = abelianization_map(p);
  return {phi.b1, phi.torsion};
}

// The correspondence a 2-3 move composed with the 3-2 on its axis induces:
// surviving tets keep their order, the two rebuilt tets recover the originals
// with the split-face vertices reversed.
Relabeling natural_roundtrip_map(const Triangulation& t, int st, int sf) {
  const Gluing& g = t.glue[st][sf];
  int u[3], k = 0;
  for (int v = 0; v < 4; ++v)
    if (v != sf) u[k++] = v;
  Relabeling r;
  r.tet.resize(t.ntets);
  r.perm.resize(t.ntets);
  int n = 0;
  for (int o = 0; o < t.ntets; ++o) {
    if (o == st || o == g.tet) continue;
    r.tet[n] = o;
    r.perm[n] = {0, 1, 2, 3};
    ++n;
  }
  r.tet[n] = st;
  r.perm[n] = {u[2], u[1], u[0], sf};
  r.tet[n + 1] = g.tet;
  r.perm[n + 1] = {g.perm[u[2]], g.perm[u[1]], g.perm[u[0]], g.face};
  return r;
}

// r maps a onto b preserving every gluing.
bool is_gluing_map(const Triangulation& a, const Triangulation& b, const Relabeling& r) {
  if (int(r.tet.size()) != a.ntets || a.ntets != b.ntets) return false;
  for (int i = 0; i < a.ntets; ++i)
    for (int f = 0; f < 4; ++f) {
      const Gluing& ga = a.glue[i][f];
      const Gluing& gb = b.glue[r.tet[i]][r.perm[i][f]];
      if (gb.tet != r.tet[ga.tet]) return false;
      for (int v = 0; v < 4; ++v)
        if (v != f && r.perm[ga.tet][ga.perm[v]] != gb.perm[r.perm[i][v]]) return false;
    }
  return true;
}

Triangulation scrambled_copy(const Triangulation& t, std::mt19937_64& rng, Relabeling* out) {
  std::vector<int> order(t.ntets);
  for (int i = 0; i < t.ntets; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  Relabeling r;  // maps t -> copy
  r.tet.assign(t.ntets, 0);
  r.perm.assign(t.ntets, {});
  for (int i = 0; i < t.ntets; ++i) {
    r.tet[i] = order[i];
    Perm4 p = {0, 1, 2, 3};
    std::shuffle(p.begin(), p.end(), rng);
    r.perm[i] = p;
  }
  Triangulation c = raw(t.ntets);
  for (int i = 0; i < t.ntets; ++i)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = t.glue[i][f];
      Perm4 pn{};
      for (int v = 0; v < 4; ++v) pn[r.perm[i][v]] = r.perm[g.tet][g.perm[v]];
      c.glue[r.tet[i]][r.perm[i][f]] = {r.tet[g.tet], pn[r.perm[i][f]], pn};
    }
  validate_triangulation(c);
  if (out) *out = r;
  return c;
}

// Cover homology through the group side: the index-n cyclic subgroup table
// pushed through Reidemeister-Schreier.
AbelianInvariants schreier_cover_h1(const Triangulation& t, const Cocycle& c, int n) {
  Presentation p = tri_fundamental_group(t);
  std::vector<Int> evals = pair_with_generators(t, c);
  std::vector<std::vector<int>> images;
  for (const Int& e : evals) {
    int shift = int(fmod_pos(e, n));
    std::vector<int> perm(n);
    for (int k = 0; k < n; ++k) perm[k] = (k + shift) % n;
    images.push_back(perm);
  }
  return cover_homology(p, table_from_perms(p, images));
}

}  // namespace

TEST_CASE("gluing validation names each failure") {
  // Unfilled entry.
  {
    Triangulation t = raw(1);
    CHECK_THROWS_WITH_AS(validate_triangulation(t), "unglued face", std::invalid_argument);
  }
  // A permutation that does not send the face to its partner face.
  {
    Triangulation t = raw(1);
    pair_faces(t, 0, 0, 0, 1, {2, 0, 1, 3});
    t.glue[0][0].perm = {0, 1, 2, 3};
    CHECK_THROWS_WITH_AS(validate_triangulation(t), "bad gluing", std::invalid_argument);
  }
  {
    Triangulation t = raw(1);
    t.glue[0][0] = {0, 0, {0, 1, 2, 3}};
    CHECK_THROWS_WITH_AS(validate_triangulation(t), "face glued to itself",
                         std::invalid_argument);
  }
  // Partner entry disagrees with the inverse permutation.
  {
    Triangulation t = raw(1);
    pair_faces(t, 0, 0, 0, 1, {1, 0, 2, 3});
    pair_faces(t, 0, 2, 0, 3, {0, 1, 3, 2});
    t.glue[0][1].perm = {1, 0, 3, 2};
    CHECK_THROWS_WITH_AS(validate_triangulation(t), "non-involutive gluing",
                         std::invalid_argument);
  }
  // An even self-gluing permutation cannot carry an orientation.
  {
    Triangulation t = raw(1);
    pair_faces(t, 0, 0, 0, 1, {1, 0, 2, 3});
    pair_faces(t, 0, 2, 0, 3, {0, 2, 3, 1});
    CHECK_THROWS_WITH_AS(validate_triangulation(t), "orientation clash", std::invalid_argument);
  }
  // Two valid complexes that never meet.
  {
    Triangulation t = raw(2);
    pair_faces(t, 0, 0, 0, 1, {1, 0, 2, 3});
    pair_faces(t, 0, 2, 0, 3, {0, 1, 3, 2});
    pair_faces(t, 1, 0, 1, 1, {1, 0, 2, 3});
    pair_faces(t, 1, 2, 1, 3, {0, 1, 3, 2});
    CHECK_THROWS_WITH_AS(validate_triangulation(t), "disconnected", std::invalid_argument);
  }
  // A vertex whose link is neither a sphere nor a torus.
  {
    Triangulation t = raw(2);
    pair_faces(t, 0, 0, 0, 1, {1, 2, 3, 0});
    pair_faces(t, 0, 2, 1, 0, {1, 2, 0, 3});
    pair_faces(t, 0, 3, 1, 1, {0, 2, 3, 1});
    pair_faces(t, 1, 2, 1, 3, {1, 2, 3, 0});
    CHECK_THROWS_WITH_AS(validate_triangulation(t), "bad link", std::invalid_argument);
  }
  // Sphere links and torus links in the same complex.
  {
    Triangulation t = raw(2);
    pair_faces(t, 0, 0, 1, 0, {0, 1, 3, 2});
    pair_faces(t, 0, 1, 1, 1, {0, 1, 3, 2});
    pair_faces(t, 0, 2, 1, 2, {0, 3, 2, 1});
    pair_faces(t, 0, 3, 1, 3, {0, 2, 1, 3});
    CHECK_THROWS_WITH_AS(validate_triangulation(t), "mixed ideal and material vertices",
                         std::invalid_argument);
  }
  // Material vertices must all be identified for a closed complex.
  {
    Triangulation t = raw(1);
    pair_faces(t, 0, 0, 0, 1, {1, 0, 2, 3});
    pair_faces(t, 0, 2, 0, 3, {0, 1, 3, 2});
    CHECK_THROWS_WITH_AS(validate_triangulation(t), "closed triangulation is not one-vertex",
                         std::invalid_argument);
  }
}

TEST_CASE("triangulation files round trip") {
  for (const Triangulation& t :
       {sphere_one_tet(), closed_two_tet(), figure_eight(), whitehead()}) {
    std::string s = serialize_triangulation(t);
    Triangulation back = parse_triangulation(s);
    CHECK(serialize_triangulation(back) == s);
    CHECK(canonical_form(back) == canonical_form(t));
  }
  CHECK_THROWS_WITH_AS(parse_triangulation("tets 1\n"), "missing tri header",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_triangulation("tri v1\n"), "missing tets line",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      parse_triangulation("tri v1\ntets 1\nglue 0 0 0 1 1230\nglue 0 0 0 2 2130\n"),
      "face glued twice", std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_triangulation("tri v1\ntets 1\nglue 0 0 0 1 1930\n"),
                       "bad glue line", std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      parse_triangulation(
          "tri v1\ntets 1\nglue 0 0 0 1 1230\nglue 0 2 0 3 0132\nideal 0\n"),
      "ideal declaration mismatch", std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_triangulation("tri v1\ntets 1\nfoo 1\n"), "unknown line: foo",
                       std::invalid_argument);
}

TEST_CASE("frozen fixtures carry their pinned invariants") {
  Triangulation s3 = sphere_one_tet();
  CHECK(!s3.ideal());
  CHECK(s3.nverts == 1);
  CHECK(s3.nedges == 2);
  AbelianInvariants h = tri_homology(s3);
  CHECK(h.rank == 0);
  CHECK(h.torsion.empty());

  Triangulation lens = closed_two_tet();
  CHECK(!lens.ideal());
  h = tri_homology(lens);
  CHECK(h.rank == 0);
  REQUIRE(h.torsion.size() == 1);
  CHECK(h.torsion[0] == 5);

  Triangulation f8 = figure_eight();
  CHECK(f8.ideal());
  CHECK(f8.nverts == 1);
  CHECK(f8.nedges == 2);
  CHECK(f8.edge_valence[0] == 6);
  CHECK(f8.edge_valence[1] == 6);
  h = tri_homology(f8);
  CHECK(h.rank == 1);
  CHECK(h.torsion.empty());

  Triangulation w = whitehead();
  CHECK(w.ideal());
  CHECK(w.nverts == 2);
  CHECK(w.nedges == 4);
  h = tri_homology(w);
  CHECK(h.rank == 2);
  CHECK(h.torsion.empty());
  // Interchangeable cusps split the sixteen corners evenly.
  std::vector<int> corners(w.nverts, 0);
  for (int i = 0; i < w.ntets; ++i)
    for (int v = 0; v < 4; ++v) ++corners[w.vertex_class[i][v]];
  CHECK(corners == std::vector<int>{8, 8});

  std::set<std::string> forms;
  for (const Triangulation& t : {s3, lens, f8, w}) forms.insert(canonical_form(t));
  CHECK(forms.size() == 4);
}

TEST_CASE("fixture Alexander polynomials match the knot tables") {
  {
    AlexanderData ad = alexander_polynomial(tri_fundamental_group(figure_eight()));
    LaurentPoly target(1);
    target.add_term({0}, 1);
    target.add_term({1}, -3);
    target.add_term({2}, 1);
    CHECK(laurent_equivalent(ad.delta, target));
  }
  {
    AlexanderData ad = alexander_polynomial(tri_fundamental_group(whitehead()));
    LaurentPoly target(2);
    target.add_term({0, 0}, 1);
    target.add_term({1, 0}, -1);
    target.add_term({0, 1}, -1);
    target.add_term({1, 1}, 1);
    CHECK(laurent_equivalent(ad.delta, target));
  }
}

TEST_CASE("chain homology agrees with the dual spine presentation") {
  for (const Triangulation& t :
       {sphere_one_tet(), closed_two_tet(), figure_eight(), whitehead()}) {
    AbelianInvariants chain = tri_homology(t);
    AbelianInvariants group = group_h1(tri_fundamental_group(t));
    CHECK(chain.rank == group.rank);
    CHECK(chain.torsion == group.torsion);
  }
}

TEST_CASE("cocycle spaces pin ranks and pairings") {
  {
    CocycleSpace cs = cocycle_space(sphere_one_tet());
    CHECK(cs.z1.cols() == 0);
    CHECK(cs.b1.cols() == 0);
    CHECK(cs.h1_rank == 0);
  }
  {
    Triangulation t = figure_eight();
    CocycleSpace cs = cocycle_space(t);
    // Truncated complex: coboundaries of the 2E link vertices have one
    // relation, so rank 2E - 1 = 3.
    CHECK(cs.b1.cols() == 3);
    CHECK(cs.z1.cols() == 4);
    CHECK(cs.h1_rank == 1);
  }
  {
    Triangulation t = whitehead();
    CocycleSpace cs = cocycle_space(t);
    CHECK(cs.b1.cols() == 7);
    CHECK(cs.z1.cols() == 9);
    CHECK(cs.h1_rank == 2);
  }
  for (Triangulation t : {closed_two_tet(), figure_eight(), whitehead()}) {
    CocycleSpace cs = cocycle_space(t);
    Presentation p = tri_fundamental_group(t);
    AbelianizationMap phi = abelianization_map(p);
    for (const Cocycle& c : z1_basis(t, cs)) CHECK(is_cocycle(t, c));
    // Coboundaries evaluate to zero on every spine loop.
    for (int j = 0; j < cs.b1.cols(); ++j) {
      Cocycle c = cocycle_from_vector(t, col_of(cs.b1, j));
      CHECK(is_cocycle(t, c));
      for (const Int& e : pair_with_generators(t, c)) CHECK(e == 0);
      std::vector<Int> y = class_of_cocycle(t, phi, c);
      for (const Int& e : y) CHECK(e == 0);
    }
    // Dual coordinates round trip through a representing cocycle.
    for (int i = 0; i < phi.b1; ++i) {
      std::vector<Int> e(phi.b1, 0);
      e[i] = 1;
      Cocycle c = cocycle_of_class(t, phi, e);
      CHECK(is_cocycle(t, c));
      CHECK(class_of_cocycle(t, phi, c) == e);
    }
  }
  // A perturbed vector violates the face conditions.
  {
    Triangulation t = figure_eight();
    CocycleSpace cs = cocycle_space(t);
    Cocycle c = cocycle_from_vector(t, col_of(cs.z1, 0));
    c.edge[0] += 1;
    CHECK(!is_cocycle(t, c));
  }
}

TEST_CASE("figure eight cyclic covers match the group route and the knot tables") {
  Triangulation t = figure_eight();
  Presentation p = tri_fundamental_group(t);
  AbelianizationMap phi = abelianization_map(p);
  Cocycle c = cocycle_of_class(t, phi, {1});
  // Degree 2: Z + Z/5. Degree 3: Z + Z/4 + Z/4.
  {
    Triangulation w2 = cyclic_cover(t, c, 2);
    CHECK(w2.ntets == 4);
    AbelianInvariants h = tri_homology(w2);
    CHECK(h.rank == 1);
    REQUIRE(h.torsion.size() == 1);
    CHECK(h.torsion[0] == 5);
    AbelianInvariants hs = schreier_cover_h1(t, c, 2);
    CHECK(hs.rank == h.rank);
    CHECK(hs.torsion == h.torsion);
  }
  {
    Triangulation w3 = cyclic_cover(t, c, 3);
    CHECK(w3.ntets == 6);
    AbelianInvariants h = tri_homology(w3);
    CHECK(h.rank == 1);
    REQUIRE(h.torsion.size() == 2);
    CHECK(h.torsion[0] == 4);
    CHECK(h.torsion[1] == 4);
    AbelianInvariants hs = schreier_cover_h1(t, c, 3);
    CHECK(hs.rank == h.rank);
    CHECK(hs.torsion == h.torsion);
  }
  // Degree 1 returns the manifold itself.
  CHECK(tri_isomorphism(cyclic_cover(t, c, 1), t).has_value());
  // The deck transformation shifts sheets.
  {
    Triangulation w3 = cyclic_cover(t, c, 3);
    Relabeling deck;
    deck.tet.resize(w3.ntets);
    deck.perm.assign(w3.ntets, {0, 1, 2, 3});
    for (int i = 0; i < w3.ntets; ++i) deck.tet[i] = (i + t.ntets) % w3.ntets;
    CHECK(is_gluing_map(w3, w3, deck));
  }
}

TEST_CASE("whitehead covers see both meridians alike") {
  Triangulation t = whitehead();
  Presentation p = tri_fundamental_group(t);
  AbelianizationMap phi = abelianization_map(p);
  for (int i = 0; i < 2; ++i) {
    std::vector<Int> e(2, 0);
    e[i] = 1;
    Cocycle c = cocycle_of_class(t, phi, e);
    Triangulation w2 = cyclic_cover(t, c, 2);
    CHECK(w2.ntets == 8);
    AbelianInvariants h = tri_homology(w2);
    CHECK(h.rank == 3);
    CHECK(h.torsion.empty());
    AbelianInvariants hs = schreier_cover_h1(t, c, 2);
    CHECK(hs.rank == 3);
    CHECK(hs.torsion.empty());
  }
  // The meridian tower grows one betti number per degree.
  Cocycle c = cocycle_of_class(t, phi, {1, 0});
  for (int n = 2; n <= 4; ++n) {
    Triangulation wn = cyclic_cover(t, c, n);
    CHECK(wn.ntets == 4 * n);
    AbelianInvariants h = tri_homology(wn);
    CHECK(h.rank == n + 1);
    CHECK(h.torsion.empty());
  }
}

TEST_CASE("impossible covers are rejected") {
  Triangulation t = figure_eight();
  Presentation p = tri_fundamental_group(t);
  AbelianizationMap phi = abelianization_map(p);
  Cocycle c = cocycle_of_class(t, phi, {1});
  CHECK_THROWS_WITH_AS(cyclic_cover(t, c, 0), "cover degree must be positive",
                       std::invalid_argument);
  // The trivial class gives a disconnected covering complex.
  Cocycle zero;
  zero.edge.assign(t.nedges, 0);
  zero.link.assign(t.nlink_arcs(), 0);
  CHECK_THROWS_WITH_AS(cyclic_cover(t, zero, 2), "disconnected", std::invalid_argument);
}

TEST_CASE("pachner moves preserve homology and cusps") {
  for (Triangulation t : {closed_two_tet(), figure_eight(), whitehead()}) {
    AbelianInvariants h0 = tri_homology(t);
    for (auto [st, sf] : valid_23_sites(t)) {
      MoveResult up = pachner_23(t, st, sf);
      CHECK(up.tri.ntets == t.ntets + 1);
      AbelianInvariants h = tri_homology(up.tri);
      CHECK(h.rank == h0.rank);
      CHECK(h.torsion == h0.torsion);
      CHECK(up.tri.nverts == t.nverts);
      CHECK(up.tri.ideal() == t.ideal());
      for (int e : valid_32_sites(up.tri)) {
        MoveResult down = pachner_32(up.tri, e);
        CHECK(down.tri.ntets == t.ntets);
        AbelianInvariants hd = tri_homology(down.tri);
        CHECK(hd.rank == h0.rank);
        CHECK(hd.torsion == h0.torsion);
      }
    }
  }
}

TEST_CASE("a 2-3 then the 3-2 on its axis is the identity on cocycles") {
  for (Triangulation t : {closed_two_tet(), figure_eight(), whitehead()}) {
    CocycleSpace cs = cocycle_space(t);
    for (auto [st, sf] : valid_23_sites(t)) {
      MoveResult up = pachner_23(t, st, sf);
      int base = up.tri.ntets - 3;
      int axis = up.tri.edge_class[base][edge_slot(0, 1)];
      CHECK(up.tri.edge_valence[axis] == 3);
      MoveResult down = pachner_32(up.tri, axis);
      Relabeling r = natural_roundtrip_map(t, st, sf);
      REQUIRE(is_gluing_map(down.tri, t, r));
      CHECK(tri_isomorphism(down.tri, t).has_value());
      for (const Cocycle& c : z1_basis(t, cs)) {
        Cocycle cu = up.transport.apply(up.tri, c);
        CHECK(is_cocycle(up.tri, cu));
        Cocycle cd = down.transport.apply(down.tri, cu);
        CHECK(is_cocycle(down.tri, cd));
        Cocycle cb = relabel_cocycle(down.tri, t, r, cd);
        CHECK(cb == c);
      }
      // The composed matrix is the same linear map.
      TransportMap both = compose(up.transport, down.transport);
      for (const Cocycle& c : z1_basis(t, cs)) {
        Cocycle direct = down.transport.apply(down.tri, up.transport.apply(up.tri, c));
        CHECK(both.apply(down.tri, c) == direct);
      }
    }
  }
}

TEST_CASE("transported classes induce the same covers") {
  for (Triangulation t : {figure_eight(), whitehead()}) {
    Presentation p = tri_fundamental_group(t);
    AbelianizationMap phi = abelianization_map(p);
    std::vector<Int> e(phi.b1, 0);
    e[0] = 1;
    Cocycle c = cocycle_of_class(t, phi, e);
    auto sites = valid_23_sites(t);
    MoveResult up = pachner_23(t, sites[0].first, sites[0].second);
    Cocycle cu = up.transport.apply(up.tri, c);
    for (int n = 2; n <= 3; ++n) {
      AbelianInvariants ha = tri_homology(cyclic_cover(t, c, n));
      AbelianInvariants hb = tri_homology(cyclic_cover(up.tri, cu, n));
      CHECK(ha.rank == hb.rank);
      CHECK(ha.torsion == hb.torsion);
    }
  }
}

TEST_CASE("move preconditions are reported") {
  // Both face classes of the one-tet sphere join the tet to itself.
  Triangulation s3 = sphere_one_tet();
  CHECK(valid_23_sites(s3).empty());
  CHECK_THROWS_WITH_AS(pachner_23(s3, 0, 0), "face joins a tetrahedron to itself",
                       std::invalid_argument);
  Triangulation f8 = figure_eight();
  CHECK_THROWS_WITH_AS(pachner_32(f8, 0), "edge valence is not 3", std::invalid_argument);
  // A valence-3 edge through a repeated tetrahedron is not collapsible. The
  // two-tet closed fixture has such edges and no collapsible ones.
  Triangulation lens = closed_two_tet();
  CHECK(lens.edge_valence[0] == 3);
  CHECK(valid_32_sites(lens).empty());
  CHECK_THROWS_WITH_AS(pachner_32(lens, 0), "edge tetrahedra not distinct",
                       std::invalid_argument);
}

TEST_CASE("canonical forms classify relabeled copies") {
  std::mt19937_64 rng(7);
  for (Triangulation t : {closed_two_tet(), figure_eight(), whitehead()}) {
    for (int iter = 0; iter < 4; ++iter) {
      Relabeling r;
      Triangulation c = scrambled_copy(t, rng, &r);
      CHECK(canonical_form(c) == canonical_form(t));
      auto iso = tri_isomorphism(t, c);
      REQUIRE(iso.has_value());
      CHECK(is_gluing_map(t, c, *iso));
      // Pushing a cocycle forward lands in the copy's cocycle space.
      CocycleSpace cs = cocycle_space(t);
      if (cs.z1.cols() > 0) {
        Cocycle z = cocycle_from_vector(t, col_of(cs.z1, 0));
        CHECK(is_cocycle(c, relabel_cocycle(t, c, *iso, z)));
      }
    }
  }
  CHECK(canonical_form(figure_eight()) != canonical_form(whitehead()));
  CHECK(!tri_isomorphism(figure_eight(), whitehead()).has_value());
  CHECK(!tri_isomorphism(sphere_one_tet(), closed_two_tet()).has_value());
}

TEST_CASE("random move walks keep the manifold and its classes") {
  std::mt19937_64 rng(1234);
  for (Triangulation start : {figure_eight(), whitehead()}) {
    AbelianInvariants h0 = tri_homology(start);
    Presentation p0 = tri_fundamental_group(start);
    AbelianizationMap phi0 = abelianization_map(p0);
    std::vector<Int> e(phi0.b1, 0);
    e[0] = 1;
    Cocycle c = cocycle_of_class(start, phi0, e);
    Triangulation cur = start;
    for (int step = 0; step < 6; ++step) {
      std::vector<int> sites32 = valid_32_sites(cur);
      bool shrink = !sites32.empty() && rng() % 5 < 2 && cur.ntets > start.ntets;
      MoveResult mr = shrink ? pachner_32(cur, sites32[rng() % sites32.size()])
                             : [&] {
                                 auto s = valid_23_sites(cur);
                                 auto [st, sf] = s[rng() % s.size()];
                                 return pachner_23(cur, st, sf);
                               }();
      c = mr.transport.apply(mr.tri, c);
      cur = mr.tri;
      CHECK(is_cocycle(cur, c));
      AbelianInvariants h = tri_homology(cur);
      CHECK(h.rank == h0.rank);
      CHECK(h.torsion == h0.torsion);
    }
    // After the walk the transported class still produces the same double
    // cover homology.
    AbelianInvariants ha = tri_homology(cyclic_cover(start, cocycle_of_class(start, phi0, e), 2));
    AbelianInvariants hb = tri_homology(cyclic_cover(cur, c, 2));
    CHECK(ha.rank == hb.rank);
    CHECK(ha.torsion == hb.torsion);
  }
}
