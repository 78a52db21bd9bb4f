#include <set>

#include "doctest.h"
#include "normfib/arith.hpp"

using namespace normfib;

TEST_CASE("primality agrees with the sieve and known traps") {
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK_FALSE(is_prime(561));    // Carmichael
  CHECK_FALSE(is_prime(2047));   // strong pseudoprime to base 2
  CHECK(is_prime((1ull << 61) - 1));
  CHECK(is_prime(1000000007ull));
  std::vector<std::uint32_t> ps = primes_below(10000);
  std::set<std::uint64_t> prime_set(ps.begin(), ps.end());
  for (std::uint64_t n = 0; n < 10000; ++n) CHECK(is_prime(n) == prime_set.count(n));
}

TEST_CASE("legendre symbol matches the square table") {
  CHECK(legendre(-1, 7) == -1);
  CHECK(legendre(0, 11) == 0);
  CHECK(legendre(2, 7) == 1);
  CHECK_THROWS_AS(legendre(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(legendre(3, 9), std::invalid_argument);
  for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull, 101ull}) {
    std::set<std::uint64_t> squares;
    for (std::uint64_t i = 1; i < p; ++i) squares.insert(i * i % p);
    for (std::uint64_t a = 0; a < p; ++a) {
      int expect = a == 0 ? 0 : (squares.count(a) ? 1 : -1);
      CHECK(legendre(Int(a), p) == expect);
    }
  }
}

TEST_CASE("curve traces: fixtures, the slow route, and the Hasse bound") {
  EllipticCurve e = cm_curve();
  CHECK(curve_ap(e, 2) == 1);
  CHECK(curve_ap(e, 3) == 0);
  CHECK_THROWS_AS(curve_ap(e, 7), std::invalid_argument);
  CHECK_THROWS_AS(curve_ap(e, 10), std::invalid_argument);
  for (std::uint32_t p : primes_below(200)) {
    if (p == 7) continue;
    Int fast = curve_ap(e, p);
    CHECK(fast == curve_ap_exhaustive(e, p));
    CHECK(fast * fast <= 4 * Int(p));
  }
}

TEST_CASE("trace vanishes exactly at primes inert in the CM field") {
  EllipticCurve e = cm_curve();
  for (std::uint32_t p : primes_below(2000)) {
    if (p == 2 || p == 7) continue;
    CHECK((curve_ap(e, p) == 0) == (legendre(-7, p) == -1));
  }
}

TEST_CASE("special primes start 13, 19, 31, 61, 73") {
  std::vector<std::uint64_t> ps = special_primes(100);
  CHECK(ps == std::vector<std::uint64_t>{13, 19, 31, 61, 73, 97});
  ps.resize(5);
  CHECK(ps == std::vector<std::uint64_t>{13, 19, 31, 61, 73});
  for (std::uint64_t p : special_primes(3000)) {
    CHECK(p != 7);
    CHECK(legendre(-3, p) == 1);
    CHECK(legendre(-7, p) == -1);
  }
}

TEST_CASE("tower degrees are perfect squares with the right start") {
  CHECK(tower_degree({}) == 1);
  CHECK(tower_degree({13}) == 196);
  CHECK(tower_degree({13, 19}) == 78400);
}

TEST_CASE("face bound dominates the exponential for fifty levels") {
  std::vector<std::uint64_t> ps = special_primes(2000);
  REQUIRE(ps.size() >= 50);
  for (int n = 1; n <= 50; ++n) {
    FaceBound fb = face_bound(n, ps);
    CHECK(fb.nu_lower == Int(1) << (2 * n));
    CHECK(fb.exceeds_exponential);
    CHECK(fb.lemma_ratio > 0.0);
    CHECK(fb.lemma_ratio < 2.0);
  }
  CHECK(face_bound(3, ps).nu_lower == 64);
  CHECK_THROWS_AS(face_bound(0, ps), std::invalid_argument);
}

TEST_CASE("modular curve genus fixtures") {
  CHECK(genus_gamma0(11).genus == 1);
  GenusData g91 = genus_gamma0(91);
  CHECK(g91.mu == 112);
  CHECK(g91.nu2 == 0);
  CHECK(g91.nu3 == 4);
  CHECK(g91.nu_inf == 4);
  CHECK(g91.genus == 7);
  CHECK(genus_gamma0(2).genus == 0);
  CHECK(genus_gamma0(1729).genus == 181);
  CHECK_THROWS_AS(genus_gamma0(1), std::invalid_argument);
  CHECK_THROWS_AS(genus_gamma0(12), std::invalid_argument);
  CHECK_THROWS_AS(genus_gamma0_from_factors({3, 3}), std::invalid_argument);
  CHECK_THROWS_AS(genus_gamma0_from_factors({4}), std::invalid_argument);
}

TEST_CASE("elliptic point factors reproduce quadratic root counts") {
  for (Int n = 2; n <= 200; ++n) {
    GenusData g;
    try {
      g = genus_gamma0(n);
    } catch (const std::invalid_argument&) {
      continue;  // not squarefree
    }
    CHECK(g.nu2 == count_roots_mod(0, 1, n));
    CHECK(g.nu3 == count_roots_mod(1, 1, n));
  }
}

TEST_CASE("genus is integral for every squarefree level up to 10000") {
  for (Int n = 2; n <= 10000; ++n) {
    try {
      GenusData g = genus_gamma0(n);
      CHECK(g.genus >= 0);
    } catch (const std::invalid_argument&) {
    }
  }
}

TEST_CASE("betti reports carry the exact seven-new rational") {
  std::vector<std::uint64_t> ps = special_primes(100);
  BettiReport r1 = betti_lower_bound(1, ps);
  CHECK(r1.level == 91);
  CHECK(r1.genus.genus == 7);
  CHECK(r1.seven_new == Rat(5));
  CHECK(r1.seven_new_integral);
  CHECK(r1.genus_floor == Rat(-1));
  CHECK(r1.genus_floor <= Rat(r1.genus.genus));

  BettiReport r2 = betti_lower_bound(2, ps);
  CHECK(r2.level == 1729);
  CHECK(r2.genus.genus == 181);
  CHECK(r2.seven_new == Rat(905, 7));
  CHECK_FALSE(r2.seven_new_integral);
  CHECK(r2.genus_floor <= Rat(r2.genus.genus));
}

TEST_CASE("whitehead face counts double per level") {
  CHECK(whitehead_faces(1) == 4);
  CHECK(whitehead_faces(2) == 8);
  CHECK(whitehead_faces(10) == 2048);
  CHECK_THROWS_AS(whitehead_faces(0), std::invalid_argument);
}
