#include <numeric>

#include "doctest.h"
#include "normfib/group.hpp"
#include "normfib/tietze.hpp"

using namespace normfib;

namespace {

// Base orbifold group for the congruence cover tower.
Presentation base_group() {
  Presentation p;
  p.gens = {"a", "b"};
  for (const char* r : {"bb", "aBABabaaaabaBAbabABAAAABAb", "aBABabaaabaBABabaaab"})
    p.rels.push_back(word_from_string(r, p.gens));
  return p;
}

// Independent count of index-n cyclic cover kernels from the abelian
// invariants: surjections counted by Moebius inversion over divisors, then
// divided by the unit group order.
long long cyclic_kernel_count(const AbelianInvariants& h, int n) {
  auto homs = [&](int d) {
    long long t = 1;
    for (int i = 0; i < h.rank; ++i) t *= d;
    for (const Int& m : h.torsion) t *= (long long)gcd_int(m, d);
    return t;
  };
  auto mobius = [](int m) {
    int out = 1;
    for (int p = 2; p * p <= m; ++p)
      if (m % p == 0) {
        m /= p;
        if (m % p == 0) return 0;
        out = -out;
      }
    if (m > 1) out = -out;
    return out;
  };
  long long surj = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) surj += mobius(n / d) * homs(d);
  long long units = 0;
  for (int u = 1; u <= n; ++u)
    if (std::gcd(u, n) == 1) ++units;
  return surj / units;
}

}  // namespace

TEST_CASE("cyclic cover counts match the abelian invariant formula") {
  struct Case {
    Presentation p;
    int n;
  };
  Presentation torus;
  torus.gens = {"a", "b"};
  torus.rels.push_back(word_from_string("abAB", torus.gens));
  Presentation z4a;
  z4a.gens = {"a", "b"};
  z4a.rels.push_back(word_from_string("aaaa", z4a.gens));
  std::vector<Case> cases = {{torus, 2}, {torus, 4}, {torus, 6}, {z4a, 2}, {z4a, 4}, {base_group(), 2}, {base_group(), 4}, {base_group(), 8}};
  for (const auto& c : cases) {
    auto covers = enumerate_cyclic_covers(c.p, c.n);
    CHECK((long long)covers.size() == cyclic_kernel_count(abelianization(c.p), c.n));
  }
}

TEST_CASE("the congruence cover tower reaches the right homology") {
  Presentation b = base_group();
  REQUIRE(abelianization(b) == AbelianInvariants{0, {2, 8}});

  // unique regular cover with covering group (Z/2)^2
  auto regs = enumerate_regular_covers(b, {2, 2});
  REQUIRE(regs.size() == 1);
  const CosetTable& tc = regs[0].table;
  CHECK(tc.degree == 4);

  SubgroupPresentation xprime = reidemeister_schreier(b, tc);
  // Schreier generator count: d*(g-1)+1
  CHECK(xprime.schreier.nsgens == 4 * (2 - 1) + 1);
  CHECK(abelianization(xprime.pres) == regs[0].homology);

  // exactly two degree four cyclic covers with first homology Z/28+Z/28+Z
  auto quads = enumerate_cyclic_covers(xprime.pres, 4);
  std::vector<const CoverDescription*> picked;
  for (const auto& cd : quads)
    if (cd.homology == AbelianInvariants{1, {28, 28}}) picked.push_back(&cd);
  REQUIRE(picked.size() == 2);

  // push both up to index sixteen subgroups of the base group
  std::vector<CosetTable> towers;
  for (const CoverDescription* cd : picked) {
    std::vector<Int> values;
    for (const auto& v : cd->hom) values.push_back(v[0]);
    CosetTable t = induced_table(xprime.schreier, values, 4);
    CHECK(t.degree == 16);
    towers.push_back(t);
  }

  CosetTable tm = intersect_subgroups(2, towers[0], towers[1]);
  CHECK(tm.degree == 64);

  AbelianInvariants hm = cover_homology(b, tm);
  CHECK(hm == AbelianInvariants{3, {2, 2, 14, 14, 14, 14}});

  // second route: rewrite and abelianize
  SubgroupPresentation m = reidemeister_schreier(b, tm);
  CHECK(m.schreier.nsgens == 64 * (2 - 1) + 1);
  CHECK(abelianization(m.pres) == hm);
}
