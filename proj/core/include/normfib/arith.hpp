#pragma once

#include <cstdint>
#include <vector>

#include "normfib/bigint.hpp"

namespace normfib {

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

std::vector<std::uint32_t> primes_below(std::uint32_t limit);

// Legendre symbol by Euler's criterion; p must be an odd prime.
int legendre(const Int& a, std::uint64_t p);

struct EllipticCurve {
  Int a1, a2, a3, a4, a6;
};

// y^2 + xy = x^3 - x^2 - 2x - 1: conductor 49, CM by the order in Q(sqrt(-7)).
// Its traces vanish exactly at the primes inert in that field.
EllipticCurve cm_curve();

// p + 1 - #E(F_p), counting the point at infinity. One quadratic-character
// evaluation per x, plus a Hasse-bound assertion. Throws on bad reduction.
Int curve_ap(const EllipticCurve& e, std::uint64_t p);

// Brute-force point count over all (x, y) pairs; the independent slow route.
Int curve_ap_exhaustive(const EllipticCurve& e, std::uint64_t p);

// Primes outside {2,3,7} that split in Q(sqrt(-3)) but are inert in
// Q(sqrt(-7)); the trace cross-check runs for every emitted p <= 30000.
std::vector<std::uint64_t> special_primes(std::uint64_t limit);

// (prod (1 + p_i))^2 over the first n special primes.
Int tower_degree(const std::vector<std::uint64_t>& primes);

struct FaceBound {
  int n = 0;
  Int dn;
  Int nu_lower;               // 2^(2n)
  bool exceeds_exponential;   // nu_lower >= exp(0.3 log d / log log d)
  double lemma_ratio;         // 2n log log d / log d, a diagnostic near 1
};

FaceBound face_bound(int n, const std::vector<std::uint64_t>& primes);

struct GenusData {
  Int level, mu, nu2, nu3, nu_inf;
  Int genus;
};

// Genus of the Gamma0 modular curve for squarefree level > 1, by the standard
// formula g = 1 + mu/12 - nu2/4 - nu3/3 - nu_inf/2.
GenusData genus_gamma0(const Int& n);
GenusData genus_gamma0_from_factors(const std::vector<std::uint64_t>& primes);

// Counts of roots of x^2+1 and x^2+x+1 mod n; the elliptic-point oracle the
// nu2/nu3 product factors must reproduce.
Int count_roots_mod(const Int& c1, const Int& c0, const Int& n);

struct BettiReport {
  int n = 0;
  Int level;              // 7 * p_1 * ... * p_n
  GenusData genus;
  Rat seven_new;          // (5/7) * genus
  bool seven_new_integral;
  Rat genus_floor;        // (sqrt(d_n) - 13 * 2^n) / 12, must be <= genus
};

BettiReport betti_lower_bound(int n, const std::vector<std::uint64_t>& primes);

// 2^(n+1); n >= 1.
Int whitehead_faces(int n);

}  // namespace normfib
