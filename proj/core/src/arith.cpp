#include "normfib/arith.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <algorithm>
#include <stdexcept>

namespace normfib {

namespace {

using Float = boost::multiprecision::cpp_bin_float_100;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return std::uint64_t((__uint128_t)a * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is a deterministic witness family for the full 64-bit range.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::vector<std::uint32_t> primes_below(std::uint32_t limit) {
  std::vector<bool> comp(limit, false);
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 2; i < limit; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = std::uint64_t(i) * i; j < limit; j += i) comp[std::size_t(j)] = true;
  }
  return out;
}

int legendre(const Int& a, std::uint64_t p) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("legendre: p must be an odd prime");
  Int r = a % Int(p);
  if (r < 0) r += p;
  std::uint64_t au = r.convert_to<std::uint64_t>();
  if (au == 0) return 0;
  std::uint64_t e = powmod(au, (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

EllipticCurve cm_curve() { return {1, -1, 0, -2, -1}; }

namespace {

Int curve_discriminant(const EllipticCurve& e) {
  Int b2 = e.a1 * e.a1 + 4 * e.a2;
  Int b4 = 2 * e.a4 + e.a1 * e.a3;
  Int b6 = e.a3 * e.a3 + 4 * e.a6;
  Int b8 = e.a1 * e.a1 * e.a6 + 4 * e.a2 * e.a6 - e.a1 * e.a3 * e.a4 + e.a2 * e.a3 * e.a3 -
           e.a4 * e.a4;
  return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

std::uint64_t mod_u(const Int& a, std::uint64_t p) {
  Int r = a % Int(p);
  if (r < 0) r += p;
  return r.convert_to<std::uint64_t>();
}

void require_good_reduction(const EllipticCurve& e, std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("curve_ap: p must be prime");
  if (curve_discriminant(e) % Int(p) == 0)
    throw std::invalid_argument("curve_ap: bad reduction at " + std::to_string(p));
}

}  // namespace

Int curve_ap(const EllipticCurve& e, std::uint64_t p) {
  require_good_reduction(e, p);
  if (p == 2) return curve_ap_exhaustive(e, p);
  // Complete the square: (2y + a1 x + a3)^2 = 4 f(x) + (a1 x + a3)^2, so the
  // fiber over x has 1 + chi(D(x)) points and a_p = -sum chi(D(x)).
  std::vector<signed char> chi(p, -1);
  chi[0] = 0;
  for (std::uint64_t i = 1; i < p; ++i) chi[std::size_t(mulmod(i, i, p))] = 1;
  std::uint64_t a1 = mod_u(e.a1, p), a2 = mod_u(e.a2, p), a3 = mod_u(e.a3, p),
                a4 = mod_u(e.a4, p), a6 = mod_u(e.a6, p);
  long long s = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t f = (mulmod(mulmod(x, x, p), (x + a2) % p, p) + mulmod(a4, x, p) + a6) % p;
    std::uint64_t l = (mulmod(a1, x, p) + a3) % p;
    std::uint64_t d = (mulmod(l, l, p) + mulmod(4 % p, f, p)) % p;
    s += chi[std::size_t(d)];
  }
  Int ap = -Int(s);
  if (ap * ap > 4 * Int(p)) throw std::logic_error("curve_ap: Hasse bound violated");
  return ap;
}

Int curve_ap_exhaustive(const EllipticCurve& e, std::uint64_t p) {
  require_good_reduction(e, p);
  std::uint64_t a1 = mod_u(e.a1, p), a2 = mod_u(e.a2, p), a3 = mod_u(e.a3, p),
                a4 = mod_u(e.a4, p), a6 = mod_u(e.a6, p);
  Int count = 1;  // the point at infinity
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t rhs = (mulmod(mulmod(x, x, p), x, p) + mulmod(a2, mulmod(x, x, p), p) +
                         mulmod(a4, x, p) + a6) %
                        p;
    for (std::uint64_t y = 0; y < p; ++y) {
      std::uint64_t lhs = (mulmod(y, y, p) + mulmod(mulmod(a1, x, p), y, p) + mulmod(a3, y, p)) % p;
      if (lhs == rhs) ++count;
    }
  }
  return Int(p) + 1 - count;
}

std::vector<std::uint64_t> special_primes(std::uint64_t limit) {
  if (limit >= (1ull << 32)) throw std::invalid_argument("special_primes: limit too large");
  std::vector<std::uint64_t> out;
  EllipticCurve e = cm_curve();
  for (std::uint32_t p : primes_below(std::uint32_t(limit))) {
    if (p == 2 || p == 3 || p == 7) continue;
    if (legendre(-3, p) != 1 || legendre(-7, p) != -1) continue;
    if (p <= 30000 && curve_ap(e, p) != 0)
      throw std::logic_error("special_primes: trace cross-check failed at " + std::to_string(p));
    out.push_back(p);
  }
  return out;
}

Int tower_degree(const std::vector<std::uint64_t>& primes) {
  Int r = 1;
  for (std::uint64_t p : primes) r *= Int(p) + 1;
  return r * r;
}

FaceBound face_bound(int n, const std::vector<std::uint64_t>& primes) {
  if (n < 1) throw std::invalid_argument("face_bound: n must be >= 1");
  if (int(primes.size()) < n) throw std::invalid_argument("face_bound: not enough primes");
  FaceBound fb;
  fb.n = n;
  fb.dn = tower_degree({primes.begin(), primes.begin() + n});
  fb.nu_lower = Int(1) << (2 * n);
  // The margins here are many orders of magnitude, so 100-digit floats are
  // decisive.
  Float d = Float(fb.dn);
  Float ld = log(d);
  Float rhs = exp(Float("0.3") * ld / log(ld));
  fb.exceeds_exponential = Float(fb.nu_lower) >= rhs;
  fb.lemma_ratio = double(Float(2 * n) * log(ld) / ld);
  return fb;
}

GenusData genus_gamma0_from_factors(const std::vector<std::uint64_t>& primes) {
  std::vector<std::uint64_t> ps = primes;
  std::sort(ps.begin(), ps.end());
  if (ps.empty() || std::adjacent_find(ps.begin(), ps.end()) != ps.end())
    throw std::invalid_argument("genus_gamma0: level must be squarefree and > 1");
  GenusData g;
  g.level = 1;
  g.mu = 1;
  g.nu2 = 1;
  g.nu3 = 1;
  for (std::uint64_t p : ps) {
    if (!is_prime(p)) throw std::invalid_argument("genus_gamma0: non-prime factor");
    g.level *= p;
    g.mu *= Int(p) + 1;
    // Factors follow the root counts of x^2+1 and x^2+x+1 mod p.
    g.nu2 *= p == 2 ? 1 : 1 + legendre(-1, p);
    g.nu3 *= p == 2 ? 0 : (p == 3 ? 1 : 1 + legendre(-3, p));
  }
  g.nu_inf = Int(1) << ps.size();
  Rat genus = 1 + Rat(g.mu, 12) - Rat(g.nu2, 4) - Rat(g.nu3, 3) - Rat(g.nu_inf, 2);
  if (denominator(genus) != 1 || genus < 0)
    throw std::logic_error("genus_gamma0: non-integral or negative genus");
  g.genus = numerator(genus);
  return g;
}

GenusData genus_gamma0(const Int& n) {
  if (n <= 1) throw std::invalid_argument("genus_gamma0: level must be > 1");
  std::vector<std::uint64_t> factors;
  Int m = n;
  for (std::uint64_t d = 2; Int(d) * d <= m; ++d) {
    if (m % d == 0) {
      m /= d;
      if (m % d == 0) throw std::invalid_argument("genus_gamma0: level not squarefree");
      factors.push_back(d);
    }
  }
  if (m > 1) {
    if (m >= Int(1) << 62) throw std::invalid_argument("genus_gamma0: level too large to factor");
    factors.push_back(m.convert_to<std::uint64_t>());
  }
  return genus_gamma0_from_factors(factors);
}

Int count_roots_mod(const Int& c1, const Int& c0, const Int& n) {
  std::uint64_t m = n.convert_to<std::uint64_t>();
  std::uint64_t b = mod_u(c1, m), c = mod_u(c0, m);
  Int count = 0;
  for (std::uint64_t x = 0; x < m; ++x)
    if ((mulmod(x, x, m) + mulmod(b, x, m) + c) % m == 0) ++count;
  return count;
}

BettiReport betti_lower_bound(int n, const std::vector<std::uint64_t>& primes) {
  if (n < 1) throw std::invalid_argument("betti_lower_bound: n must be >= 1");
  if (int(primes.size()) < n) throw std::invalid_argument("betti_lower_bound: not enough primes");
  BettiReport r;
  r.n = n;
  std::vector<std::uint64_t> factors = {7};
  factors.insert(factors.end(), primes.begin(), primes.begin() + n);
  r.genus = genus_gamma0_from_factors(factors);
  r.level = r.genus.level;
  r.seven_new = Rat(5 * r.genus.genus, 7);
  r.seven_new_integral = r.genus.genus % 7 == 0;
  Int sqrt_d = 1;
  for (int i = 0; i < n; ++i) sqrt_d *= Int(primes[i]) + 1;
  r.genus_floor = Rat(sqrt_d - 13 * (Int(1) << n), 12);
  return r;
}

Int whitehead_faces(int n) {
  if (n < 1) throw std::invalid_argument("whitehead_faces: n must be >= 1");
  return Int(1) << (n + 1);
}

}  // namespace normfib
