#include <random>

#include "doctest.h"
#include "normfib/fox.hpp"
#include "normfib/tietze.hpp"
#include "test_util.hpp"

using namespace normfib;

namespace {

Presentation pres(std::vector<std::string> gens, std::vector<std::string> rels) {
  Presentation p;
  p.gens = gens;
  for (const auto& r : rels) p.rels.push_back(word_from_string(r, gens));
  return p;
}

LaurentPoly lp(int nvars, std::vector<std::pair<Exp, long long>> terms) {
  LaurentPoly p(nvars);
  for (auto& [e, c] : terms) p.add_term(e, Int(c));
  return p;
}

Presentation trefoil() { return pres({"a", "b"}, {"abaBAB"}); }

// aBABabaaaabaBAbabABAAAABAb and friends present the tower's base group.
Presentation base_group() {
  return pres({"a", "b"}, {"bb", "aBABabaaaabaBAbabABAAAABAb", "aBABabaaabaBABabaaab"});
}

Presentation random_presentation(std::mt19937_64& rng) {
  int ng = int(rand_range(rng, 2, 4));
  Presentation p;
  p.gens = default_gen_names(ng);
  int nr = int(rand_range(rng, 1, 3));
  for (int r = 0; r < nr; ++r) {
    Word w;
    int len = int(rand_range(rng, 1, 8));
    for (int t = 0; t < len; ++t) {
      int g = int(rand_range(rng, 1, ng));
      w.append(rand_range(rng, 0, 1) ? g : -g);
    }
    if (!w.empty()) p.rels.push_back(w);
  }
  return p;
}

}  // namespace

TEST_CASE("fox derivative base cases in a free group") {
  Presentation f2 = pres({"x", "y"}, {});
  AbelianizationMap phi = abelianization_map(f2);
  REQUIRE(phi.b1 == 2);
  Word xy = word_from_string("xy", f2.gens);
  Word xinv = word_from_string("X", f2.gens);
  Word comm = word_from_string("xyXY", f2.gens);

  // The map may use any basis of Z^2; express expectations through it.
  Exp ex = phi.image(word_from_string("x", f2.gens));
  Exp ey = phi.image(word_from_string("y", f2.gens));
  CHECK(fox_derivative(xy, 0, phi) == lp(2, {{{0, 0}, 1}}));
  CHECK(fox_derivative(xy, 1, phi) == LaurentPoly::monomial(2, ex, 1));
  Exp minus_ex = {-ex[0], -ex[1]};
  CHECK(fox_derivative(xinv, 0, phi) == LaurentPoly::monomial(2, minus_ex, -1));
  CHECK(fox_derivative(xinv, 1, phi) == LaurentPoly(2));
  // d/dx [x,y] = 1 - xyx^-1 = 1 - y in the abelian image.
  LaurentPoly expected = lp(2, {{{0, 0}, 1}}) - LaurentPoly::monomial(2, ey, 1);
  CHECK(fox_derivative(comm, 0, phi) == expected);
}

TEST_CASE("abelianization map kills relators and hits the free quotient") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    Presentation p = random_presentation(rng);
    AbelianizationMap phi = abelianization_map(p);
    for (const Word& r : p.rels) {
      Exp z = phi.image(r);
      for (int v : z) CHECK(v == 0);
    }
    if (phi.b1 > 0) {
      SmithForm s = smith_normal_form(phi.images);
      REQUIRE(s.rank == phi.b1);
      for (int i = 0; i < s.rank; ++i) CHECK(s.d.at(i, i) == 1);
    }
  }
}

TEST_CASE("fox fundamental identity on random words") {
  std::mt19937_64 rng(1789);
  for (int trial = 0; trial < 150; ++trial) {
    Presentation p = random_presentation(rng);
    AbelianizationMap phi = abelianization_map(p);
    Word w;
    int len = int(rand_range(rng, 0, 12));
    for (int t = 0; t < len; ++t) {
      int g = int(rand_range(rng, 1, p.ngens()));
      w.append(rand_range(rng, 0, 1) ? g : -g);
    }
    CHECK(fox_identity_holds(w, phi));
  }
}

TEST_CASE("trefoil polynomial matches the Seifert matrix oracle") {
  AlexanderData d = alexander_polynomial(trefoil());
  REQUIRE(d.phi.b1 == 1);
  // det(V - t V^T) for the Seifert matrix [[-1,1],[0,-1]].
  LaurentPoly t = LaurentPoly::variable(1, 0);
  LaurentPoly one = LaurentPoly::constant(1, 1);
  std::vector<std::vector<LaurentPoly>> vt = {{t - one, one}, {-t, t - one}};
  LaurentPoly oracle = laurent_det(vt);
  CHECK(equal_up_to_unit(d.delta, oracle));
  CHECK(d.delta == lp(1, {{{0}, 1}, {{1}, -1}, {{2}, 1}}));
}

TEST_CASE("small polynomial fixtures") {
  CHECK(alexander_polynomial(pres({"a"}, {})).delta == LaurentPoly::constant(1, 1));
  CHECK(alexander_polynomial(pres({"a", "b"}, {"abAB"})).delta == LaurentPoly::constant(2, 1));
  // Free of rank 2: no minors of full size exist, the ideal is zero.
  CHECK(alexander_polynomial(pres({"a", "b"}, {})).delta.is_zero());
  AlexanderData z = alexander_polynomial(pres({"a", "b"}, {"aabb"}));
  REQUIRE(z.phi.b1 == 1);
  CHECK(z.phi.torsion == std::vector<Int>{2});
}

TEST_CASE("polynomial divides every full-size minor") {
  for (Presentation p : {trefoil(), pres({"a", "b"}, {"abAB", "aabABB"})}) {
    AlexanderData d = alexander_polynomial(p);
    if (d.delta.is_zero()) continue;
    for (const auto& row : d.fox)
      for (const auto& entry : row) {
        // g = 2, so minors are the single entries.
        if (!entry.is_zero()) CHECK(divide_exact(entry, d.delta).has_value());
      }
  }
}

TEST_CASE("polynomial survives presentation scrambling") {
  std::mt19937_64 rng(4242);
  AlexanderData ref = alexander_polynomial(trefoil());
  for (int trial = 0; trial < 12; ++trial) {
    Presentation mess = scramble_presentation(trefoil(), rng, 8);
    AlexanderData d = alexander_polynomial(mess);
    CHECK(laurent_equivalent(d.delta, ref.delta));
  }
}

TEST_CASE("degree eight cover has the even quartic polynomial") {
  Presentation b = base_group();
  CosetTable t = table_from_perms(b, {{1, 2, 5, 0, 6, 7, 3, 4}, {2, 4, 0, 5, 1, 3, 7, 6}});
  CHECK(cover_homology(b, t) == AbelianInvariants{1, {4, 8}});
  SubgroupPresentation sub = reidemeister_schreier(b, t);
  SimplifyResult simp = simplify_presentation(sub.pres);
  AlexanderData d = alexander_polynomial(simp.pres);
  CHECK(equal_up_to_unit(d.delta, lp(1, {{{0}, 1}, {{2}, 30}, {{4}, 1}})));
}

TEST_CASE("norm values and seminorm properties") {
  LaurentPoly tre = alexander_polynomial(trefoil()).delta;
  CHECK(alexander_norm(tre, {1}) == 2);
  CHECK(alexander_norm(tre, {-3}) == 6);
  CHECK(alexander_norm(LaurentPoly::constant(2, 5), {3, -1}) == 0);
  LaurentPoly w = lp(2, {{{1, 1}, 1}, {{1, 0}, -1}, {{0, 1}, -1}, {{0, 0}, 1}});
  CHECK(alexander_norm(w, {1, 1}) == 2);
  CHECK(alexander_norm(w, {1, 0}) == 1);
  CHECK(alexander_norm(w, {2, -3}) == 5);
  CHECK_THROWS_AS(alexander_norm(w, {1}), std::invalid_argument);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Int> u = {Int(rand_range(rng, -5, 5)), Int(rand_range(rng, -5, 5))};
    std::vector<Int> v = {Int(rand_range(rng, -5, 5)), Int(rand_range(rng, -5, 5))};
    Int k = rand_range(rng, -4, 4);
    std::vector<Int> ku = {k * u[0], k * u[1]};
    std::vector<Int> uv = {u[0] + v[0], u[1] + v[1]};
    CHECK(alexander_norm(w, ku) == abs_int(k) * alexander_norm(w, u));
    CHECK(alexander_norm(w, uv) <= alexander_norm(w, u) + alexander_norm(w, v));
  }
}

TEST_CASE("interval ball carries end coefficients") {
  AlexanderBall b = alexander_ball(lp(1, {{{0}, 1}, {{2}, 30}, {{4}, 1}}));
  CHECK(b.single_variable);
  REQUIRE(b.ball.faces.size() == 2);
  REQUIRE(b.ball.vertices.size() == 2);
  CHECK(b.ball.vertices[0][0] == Rat(-1, 4));
  CHECK(b.ball.vertices[1][0] == Rat(1, 4));
  CHECK(b.face_coeff == std::vector<Int>{1, 1});
  CHECK(b.face_passes == std::vector<bool>{true, true});
  CHECK(fibering_obstruction_passes(b, 0));
  CHECK_THROWS_AS(fibering_obstruction_passes(b, 2), std::invalid_argument);

  // Asymmetric ends: only the face read off the unit end passes.
  AlexanderBall a = alexander_ball(lp(1, {{{0}, 2}, {{2}, 30}, {{4}, 1}}));
  int pass = 0;
  for (size_t f = 0; f < a.face_passes.size(); ++f) pass += a.face_passes[f];
  CHECK(pass == 1);
  CHECK_THROWS_AS(alexander_ball(LaurentPoly(1)), std::invalid_argument);
}

TEST_CASE("ball face count equals newton vertex count for symmetric polynomials") {
  std::mt19937_64 rng(909);
  IntMatrix neg = IntMatrix::identity(2);
  neg.at(0, 0) = -1;
  neg.at(1, 1) = -1;
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    LaurentPoly p(2);
    int nt = int(rand_range(rng, 3, 5));
    for (int i = 0; i < nt; ++i)
      p.add_term({int(rand_range(rng, -2, 2)), int(rand_range(rng, -2, 2))},
                 Int(rand_range(rng, 1, 4)));
    if (p.is_zero()) continue;
    LaurentPoly q = p * p.monomial_substitution(neg);
    AlexanderBall b = alexander_ball(q);
    if (b.ball.degenerate) continue;
    CHECK(b.ball.faces.size() == hull_vertices_lattice(q.support()).size());
    ++checked;
  }
  CHECK(checked >= 10);
}

TEST_CASE("sandwich certifies faces from vertex bounds") {
  LaurentPoly w = lp(2, {{{1, 1}, 1}, {{1, 0}, -1}, {{0, 1}, -1}, {{0, 0}, 1}});
  AlexanderBall b = alexander_ball(w);
  REQUIRE(b.ball.faces.size() == 4);
  std::vector<SandwichClass> good = {
      {{1, 0}, 1}, {{-1, 0}, 1}, {{0, 1}, 1}, {{0, -1}, 1}};
  SandwichReport rep = norm_sandwich(b, good);
  CHECK(rep.applicable);
  for (auto v : rep.classes) CHECK(v == SandwichVerdict::Certified);
  for (auto v : rep.faces) CHECK(v == SandwichVerdict::Certified);
  CHECK(rep.alexander_value == std::vector<Int>{1, 1, 1, 1});

  // A slack bound on one vertex leaves the two faces at that vertex open.
  std::vector<SandwichClass> slack = good;
  slack[0].upper_bound = 2;
  rep = norm_sandwich(b, slack);
  CHECK(rep.classes[0] == SandwichVerdict::Inconclusive);
  int certified = 0;
  for (auto v : rep.faces) certified += v == SandwichVerdict::Certified;
  CHECK(certified == 2);

  // One variable: the squeeze needs b1 >= 2, everything stays open.
  AlexanderBall one = alexander_ball(lp(1, {{{0}, 1}, {{2}, 1}}));
  rep = norm_sandwich(one, {{{1}, 2}});
  CHECK_FALSE(rep.applicable);
  CHECK_FALSE(rep.reason.empty());
  for (auto v : rep.classes) CHECK(v == SandwichVerdict::Inconclusive);
  for (auto v : rep.faces) CHECK(v == SandwichVerdict::Inconclusive);
}

TEST_CASE("rank zero abelianization is rejected") {
  CHECK_THROWS_AS(alexander_polynomial(pres({"a"}, {"aa"})), std::domain_error);
  CHECK(abelianization(base_group()) == AbelianInvariants{0, {2, 8}});
  CHECK_THROWS_AS(alexander_polynomial(base_group()), std::domain_error);
}
