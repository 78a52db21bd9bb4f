#include <random>

#include "doctest.h"
#include "normfib/laurent.hpp"
#include "test_util.hpp"

using namespace normfib;

namespace {

LaurentPoly x(int n, int i, int p = 1) { return LaurentPoly::variable(n, i, p); }

LaurentPoly random_poly(std::mt19937_64& rng, int nvars, int max_terms) {
  LaurentPoly p(nvars);
  int t = int(rand_range(rng, 1, max_terms));
  for (int k = 0; k < t; ++k) {
    Exp e(nvars);
    for (int i = 0; i < nvars; ++i) e[i] = int(rand_range(rng, -3, 3));
    p.add_term(e, rand_range(rng, -5, 5));
  }
  return p;
}

}  // namespace

TEST_CASE("laurent arithmetic identities") {
  LaurentPoly a = x(2, 0) + x(2, 1);
  LaurentPoly b = x(2, 0) - x(2, 1);
  CHECK(a * b == x(2, 0).pow(2) - x(2, 1).pow(2));

  LaurentPoly c = x(1, 0) + x(1, 0, -1);
  LaurentPoly expect = x(1, 0, 2) + LaurentPoly::constant(1, 2) + x(1, 0, -2);
  CHECK(c.pow(2) == expect);
  CHECK((a - a).is_zero());
}

TEST_CASE("monomial substitution maps exponents linearly") {
  LaurentPoly p = x(2, 0) + x(2, 1);
  IntMatrix m(2, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 1;
  m.at(1, 1) = 1;
  // (1,0) -> (1,0), (0,1) -> (1,1)
  LaurentPoly q = p.monomial_substitution(m);
  LaurentPoly expect = x(2, 0) + x(2, 0) * x(2, 1);
  CHECK(q == expect);

  // collapse to one variable: total degree
  IntMatrix row(1, 2);
  row.at(0, 0) = 1;
  row.at(0, 1) = 1;
  CHECK(p.monomial_substitution(row) == x(1, 0) + x(1, 0));
}

TEST_CASE("canonical unit form pins translation and sign") {
  LaurentPoly p = -(x(2, 0).pow(2) * x(2, 1, -1)) - x(2, 0);
  LaurentPoly c = canonical_unit_form(p);
  LaurentPoly expect(2);
  expect.add_term({0, 0}, 1);
  expect.add_term({1, -1}, 1);
  CHECK(c == expect);
  CHECK(equal_up_to_unit(p, c));
  CHECK(equal_up_to_unit(p, -(p.mul_monomial({3, -2}, 1))));
  CHECK(!equal_up_to_unit(p, p + LaurentPoly::constant(2, 1)));
}

TEST_CASE("exact division succeeds exactly on multiples") {
  LaurentPoly a = x(2, 0) + x(2, 1);
  LaurentPoly b = x(2, 0) - x(2, 1);
  auto q = divide_exact(a * b, b);
  REQUIRE(q.has_value());
  CHECK(*q == a);
  CHECK(!divide_exact(x(2, 0).pow(2) + x(2, 1).pow(2), b).has_value());
  CHECK(!divide_exact(LaurentPoly::constant(2, 3), LaurentPoly::constant(2, 2)).has_value());

  std::mt19937_64 rng(8086);
  for (int trial = 0; trial < 80; ++trial) {
    int nv = int(rand_range(rng, 1, 3));
    LaurentPoly f = random_poly(rng, nv, 4);
    LaurentPoly g = random_poly(rng, nv, 4);
    if (g.is_zero()) continue;
    auto quo = divide_exact(f * g, g);
    REQUIRE(quo.has_value());
    CHECK(*quo == f);
  }
}

TEST_CASE("content and primitive part") {
  LaurentPoly p = LaurentPoly::monomial(2, {1, 0}, 6) + LaurentPoly::monomial(2, {0, 1}, 9);
  CHECK(content(p) == 3);
  LaurentPoly prim = primitive_part(p);
  CHECK(content(prim) == 1);
  CHECK(prim * LaurentPoly::constant(2, 3) == p);
  CHECK(content(LaurentPoly(2)) == 0);
}

TEST_CASE("gcd on fixed polynomials") {
  LaurentPoly t = x(1, 0);
  LaurentPoly one = LaurentPoly::constant(1, 1);
  // gcd(t^2-1, t^3-1) = t-1 up to unit
  LaurentPoly g = laurent_gcd(t.pow(2) - one, t.pow(3) - one);
  CHECK(g == canonical_unit_form(t - one));

  // monomials are units
  CHECK(laurent_gcd(x(2, 0) * x(2, 1), x(2, 0).pow(2)) == LaurentPoly::constant(2, 1));

  LaurentPoly xy_sum = x(2, 0) + x(2, 1);
  LaurentPoly xy_diff = x(2, 0) - x(2, 1);
  CHECK(laurent_gcd(xy_sum.pow(2), xy_sum * xy_diff) == canonical_unit_form(xy_sum));

  LaurentPoly xm1 = x(2, 0) - LaurentPoly::constant(2, 1);
  LaurentPoly ym1 = x(2, 1) - LaurentPoly::constant(2, 1);
  CHECK(laurent_gcd(xm1 * ym1, ym1) == canonical_unit_form(ym1));

  CHECK(laurent_gcd(xm1, LaurentPoly(2)) == canonical_unit_form(xm1));
  CHECK(laurent_gcd(LaurentPoly::constant(1, 4), LaurentPoly::constant(1, 6)) ==
        LaurentPoly::constant(1, 2));
}

TEST_CASE("gcd of common multiples contains the common factor") {
  std::mt19937_64 rng(424242);
  int done = 0;
  for (int trial = 0; done < 40 && trial < 200; ++trial) {
    int nv = int(rand_range(rng, 1, 2));
    LaurentPoly a = random_poly(rng, nv, 3);
    LaurentPoly b = random_poly(rng, nv, 3);
    LaurentPoly c = random_poly(rng, nv, 3);
    if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
    ++done;
    LaurentPoly g = laurent_gcd(a * c, b * c);
    CHECK(divide_exact(a * c, g).has_value());
    CHECK(divide_exact(b * c, g).has_value());
    CHECK(divide_exact(g, c).has_value());
  }
}

TEST_CASE("gcd is symmetric and idempotent") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    int nv = int(rand_range(rng, 1, 2));
    LaurentPoly a = random_poly(rng, nv, 4);
    LaurentPoly b = random_poly(rng, nv, 4);
    LaurentPoly g1 = laurent_gcd(a, b);
    LaurentPoly g2 = laurent_gcd(b, a);
    CHECK(equal_up_to_unit(g1, g2));
    if (!a.is_zero()) CHECK(laurent_gcd(a, a) == canonical_unit_form(a));
  }
}
