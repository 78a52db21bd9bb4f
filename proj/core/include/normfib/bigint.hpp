#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace normfib {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline int sign_of(const Int& a) { return a < 0 ? -1 : (a > 0 ? 1 : 0); }

// Nonnegative gcd, gcd(0,0) = 0.
inline Int gcd_int(const Int& a, const Int& b) {
  Int x = abs_int(a), y = abs_int(b);
  while (y != 0) {
    Int t = x % y;
    x = y;
    y = t;
  }
  return x;
}

inline Int lcm_int(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs_int(a / gcd_int(a, b) * b);
}

// Floor division, sign convention independent of the platform's operator/.
inline Int fdiv(const Int& a, const Int& b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Int fmod_pos(const Int& a, const Int& b) { return a - fdiv(a, b) * b; }

}  // namespace normfib
