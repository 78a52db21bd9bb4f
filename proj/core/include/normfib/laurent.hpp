#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "normfib/bigint.hpp"
#include "normfib/intmatrix.hpp"

namespace normfib {

using Exp = std::vector<int>;  // exponent vector, one entry per variable

// Multivariable Laurent polynomial over Z with exact coefficients.
// Terms are keyed by exponent vector in lexicographic order.
class LaurentPoly {
 public:
  explicit LaurentPoly(int nvars = 0) : nvars_(nvars) {}

  static LaurentPoly constant(int nvars, const Int& c);
  static LaurentPoly monomial(int nvars, const Exp& e, const Int& c);
  static LaurentPoly variable(int nvars, int i, int power = 1);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int term_count() const { return int(terms_.size()); }
  const std::map<Exp, Int>& terms() const { return terms_; }

  Int coeff(const Exp& e) const;
  void add_term(const Exp& e, const Int& c);

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  bool operator==(const LaurentPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }

  LaurentPoly pow(unsigned n) const;
  LaurentPoly mul_monomial(const Exp& shift, const Int& c) const;

  // Exponents e |-> m * e; m has nvars() columns, the result has m.rows() vars.
  LaurentPoly monomial_substitution(const IntMatrix& m) const;

  // Componentwise minimum/maximum exponent over the support (zero poly: all 0).
  Exp min_exponents() const;
  Exp max_exponents() const;
  std::vector<Exp> support() const;

  // Degree in one variable: max minus nothing; span = max - min.
  int max_deg(int var) const;
  int min_deg(int var) const;

  std::string to_string(const std::vector<std::string>& vars) const;

 private:
  int nvars_;
  std::map<Exp, Int> terms_;
};

// Multiplies by +-(monomial) so the lex-smallest exponent vector becomes 0 and
// its coefficient is positive. Zero maps to zero.
LaurentPoly canonical_unit_form(const LaurentPoly& p);

bool equal_up_to_unit(const LaurentPoly& a, const LaurentPoly& b);

// Gcd of all coefficients (nonnegative).
Int content(const LaurentPoly& p);
LaurentPoly primitive_part(const LaurentPoly& p);

// Exact quotient a/b if it exists as a Laurent polynomial.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b);

// Gcd up to canonical unit (recursive content/primitive-part, primitive PRS).
LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b);

// Fraction-free determinant (Bareiss) of a square Laurent matrix; every
// interior division is exact because the intermediates are minors.
LaurentPoly laurent_det(std::vector<std::vector<LaurentPoly>> m);

// True when b(e) = s * a(M e + t) for some unimodular integer M, translation t
// and global sign s. Requires the supports to affinely span all variables (or
// be single points); used to compare polynomials produced in different free
// homology bases.
bool laurent_equivalent(const LaurentPoly& a, const LaurentPoly& b);

}  // namespace normfib
