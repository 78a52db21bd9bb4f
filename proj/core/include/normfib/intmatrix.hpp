#pragma once

#include <optional>
#include <string>
#include <vector>

#include "normfib/bigint.hpp"

namespace normfib {

// Dense exact integer matrix. A matrix M with r rows and c cols represents the
// linear map Z^c -> Z^r, v |-> M v. Relation matrices are the transpose view:
// rows are relations on Z^c (see abelian_invariants).
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Int& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  IntMatrix transpose() const;
  IntMatrix mul(const IntMatrix& o) const;
  std::vector<Int> apply(const std::vector<Int>& v) const;

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  bool is_zero() const;
  std::string to_string() const;

 private:
  int rows_, cols_;
  std::vector<Int> a_;
};

// u * a * v = d with u, v unimodular and d diagonal, d_1 | d_2 | ..., d_i >= 0.
struct SmithForm {
  IntMatrix d, u, v;
  int rank = 0;  // number of nonzero diagonal entries
};

SmithForm smith_normal_form(const IntMatrix& a);

// Determinantal divisors g_k = gcd of all k x k minors (g_0 = 1). Exponential in
// size; intended for cross-checking SNF on small matrices.
std::vector<Int> determinantal_divisors(const IntMatrix& a, int upto);

// Structure of Z^cols / (lattice spanned by the rows of `relations`).
struct AbelianInvariants {
  int rank = 0;
  std::vector<Int> torsion;  // entries > 1 in divisibility order

  bool operator==(const AbelianInvariants& o) const {
    return rank == o.rank && torsion == o.torsion;
  }
  std::string to_string() const;
};

AbelianInvariants abelian_invariants(const IntMatrix& relations);

// Columns form a Z-basis of the saturated lattice {x : a x = 0}.
IntMatrix kernel_basis(const IntMatrix& a);

// Rows form the Hermite normal form basis of the row lattice of a; canonical,
// so equal lattices give equal matrices.
IntMatrix row_lattice_basis(const IntMatrix& a);

// One integral solution of a x = b, if any.
std::optional<std::vector<Int>> solve_integral(const IntMatrix& a, const std::vector<Int>& b);

// Columns X_j solve a X_j = B_j; nullopt if any column is unsolvable.
std::optional<IntMatrix> solve_integral_matrix(const IntMatrix& a, const IntMatrix& b);

// Fraction-free determinant (Bareiss).
Int determinant(IntMatrix a);

int rank_rational(const IntMatrix& a);

// Homology at the middle of Z^{c2} --d2--> Z^{c1} --d1--> Z^{c0}.
// Requires d1 * d2 = 0.
AbelianInvariants chain_homology(const IntMatrix& d1, const IntMatrix& d2);

}  // namespace normfib
