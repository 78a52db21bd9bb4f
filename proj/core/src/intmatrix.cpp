#include "normfib/intmatrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace normfib {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix::mul shape mismatch");
  IntMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int& aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < o.cols_; ++j) {
        if (o.at(k, j) != 0) r.at(i, j) += aik * o.at(k, j);
      }
    }
  return r;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& v) const {
  if (int(v.size()) != cols_) throw std::invalid_argument("IntMatrix::apply shape mismatch");
  std::vector<Int> r(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != 0 && v[j] != 0) r[i] += at(i, j) * v[j];
  return r;
}

bool IntMatrix::is_zero() const {
  for (const Int& x : a_)
    if (x != 0) return false;
  return true;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) {
      if (j) os << ' ';
      os << at(i, j);
    }
    os << '\n';
  }
  return os.str();
}

namespace {

struct SnfWork {
  IntMatrix d, u, v;

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < d.cols(); ++c) std::swap(d.at(i, c), d.at(j, c));
    for (int c = 0; c < u.cols(); ++c) std::swap(u.at(i, c), u.at(j, c));
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < d.rows(); ++r) std::swap(d.at(r, i), d.at(r, j));
    for (int r = 0; r < v.rows(); ++r) std::swap(v.at(r, i), v.at(r, j));
  }
  // row i -= q * row j
  void row_sub(int i, int j, const Int& q) {
    if (q == 0) return;
    for (int c = 0; c < d.cols(); ++c) d.at(i, c) -= q * d.at(j, c);
    for (int c = 0; c < u.cols(); ++c) u.at(i, c) -= q * u.at(j, c);
  }
  // col i -= q * col j
  void col_sub(int i, int j, const Int& q) {
    if (q == 0) return;
    for (int r = 0; r < d.rows(); ++r) d.at(r, i) -= q * d.at(r, j);
    for (int r = 0; r < v.rows(); ++r) v.at(r, i) -= q * v.at(r, j);
  }
  void negate_row(int i) {
    for (int c = 0; c < d.cols(); ++c) d.at(i, c) = -d.at(i, c);
    for (int c = 0; c < u.cols(); ++c) u.at(i, c) = -u.at(i, c);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  SnfWork w{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols())};
  const int rows = a.rows(), cols = a.cols();
  const int n = std::min(rows, cols);
  int k = 0;
  for (; k < n; ++k) {
    // Locate a pivot: smallest |entry| in the remaining submatrix.
    int pi = -1, pj = -1;
    for (int i = k; i < rows; ++i)
      for (int j = k; j < cols; ++j) {
        const Int& x = w.d.at(i, j);
        if (x == 0) continue;
        if (pi < 0 || abs_int(x) < abs_int(w.d.at(pi, pj))) {
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    w.swap_rows(k, pi);
    w.swap_cols(k, pj);

    for (;;) {
      bool clean = true;
      for (int i = k + 1; i < rows; ++i) {
        if (w.d.at(i, k) == 0) continue;
        Int q = fdiv(w.d.at(i, k), w.d.at(k, k));
        w.row_sub(i, k, q);
        if (w.d.at(i, k) != 0) {
          // Remainder is smaller than the pivot: promote it.
          w.swap_rows(k, i);
          clean = false;
        }
      }
      for (int j = k + 1; j < cols; ++j) {
        if (w.d.at(k, j) == 0) continue;
        Int q = fdiv(w.d.at(k, j), w.d.at(k, k));
        w.col_sub(j, k, q);
        if (w.d.at(k, j) != 0) {
          w.swap_cols(k, j);
          clean = false;
        }
      }
      if (!clean) continue;

      // Row and column are clear; enforce divisibility of the submatrix.
      bool fixed = false;
      for (int i = k + 1; i < rows && !fixed; ++i)
        for (int j = k + 1; j < cols && !fixed; ++j)
          if (w.d.at(i, j) % w.d.at(k, k) != 0) {
            w.row_sub(k, i, Int(-1));  // add row i to row k
            fixed = true;
          }
      if (!fixed) break;
    }
    if (w.d.at(k, k) < 0) w.negate_row(k);
  }
  SmithForm out{std::move(w.d), std::move(w.u), std::move(w.v), k};
  return out;
}

std::vector<Int> determinantal_divisors(const IntMatrix& a, int upto) {
  const int n = std::min(a.rows(), a.cols());
  upto = std::min(upto, n);
  std::vector<Int> out;
  std::vector<int> ridx, cidx;
  for (int k = 1; k <= upto; ++k) {
    Int g = 0;
    std::vector<int> rs(k), cs(k);
    // Iterate over all k-subsets of rows and columns.
    for (int i = 0; i < k; ++i) rs[i] = i;
    bool rdone = a.rows() < k;
    while (!rdone) {
      for (int i = 0; i < k; ++i) cs[i] = i;
      bool cdone = a.cols() < k;
      while (!cdone) {
        IntMatrix m(k, k);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) m.at(i, j) = a.at(rs[i], cs[j]);
        g = gcd_int(g, determinant(m));
        // next column subset
        int t = k - 1;
        while (t >= 0 && cs[t] == a.cols() - k + t) --t;
        if (t < 0)
          cdone = true;
        else {
          ++cs[t];
          for (int s = t + 1; s < k; ++s) cs[s] = cs[s - 1] + 1;
        }
      }
      int t = k - 1;
      while (t >= 0 && rs[t] == a.rows() - k + t) --t;
      if (t < 0)
        rdone = true;
      else {
        ++rs[t];
        for (int s = t + 1; s < k; ++s) rs[s] = rs[s - 1] + 1;
      }
    }
    out.push_back(g);
    if (g == 0) {
      while (int(out.size()) < upto) out.push_back(0);
      break;
    }
  }
  return out;
}

AbelianInvariants abelian_invariants(const IntMatrix& relations) {
  // Hermite reduction first: the row lattice is unchanged and the smith pass
  // then runs on a small triangular matrix, which avoids coefficient swell.
  IntMatrix h = row_lattice_basis(relations);
  SmithForm s = smith_normal_form(h);
  AbelianInvariants inv;
  inv.rank = relations.cols() - s.rank;
  for (int i = 0; i < s.rank; ++i)
    if (s.d.at(i, i) > 1) inv.torsion.push_back(s.d.at(i, i));
  return inv;
}

std::string AbelianInvariants::to_string() const {
  std::ostringstream os;
  os << "rank " << rank;
  if (!torsion.empty()) {
    os << " torsion";
    for (const Int& t : torsion) os << ' ' << t;
  }
  return os.str();
}

IntMatrix kernel_basis(const IntMatrix& a) {
  SmithForm s = smith_normal_form(a);
  IntMatrix k(a.cols() - s.rank, a.cols());
  for (int j = s.rank; j < a.cols(); ++j)
    for (int i = 0; i < a.cols(); ++i) k.at(j - s.rank, i) = s.v.at(i, j);
  // Hermite-reduce: same lattice, much smaller entries than raw SNF columns.
  return row_lattice_basis(k).transpose();
}

IntMatrix row_lattice_basis(const IntMatrix& a) {
  IntMatrix m = a;
  const int rows = m.rows(), cols = m.cols();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    // Reduce column c below row r to zero with unimodular row ops.
    for (;;) {
      int p = -1;
      for (int i = r; i < rows; ++i)
        if (m.at(i, c) != 0 && (p < 0 || abs_int(m.at(i, c)) < abs_int(m.at(p, c)))) p = i;
      if (p < 0) break;
      for (int j = 0; j < cols; ++j) std::swap(m.at(r, j), m.at(p, j));
      bool done = true;
      for (int i = r + 1; i < rows; ++i) {
        if (m.at(i, c) == 0) continue;
        Int q = fdiv(m.at(i, c), m.at(r, c));
        for (int j = 0; j < cols; ++j) m.at(i, j) -= q * m.at(r, j);
        if (m.at(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (m.at(r, c) != 0) {
      if (m.at(r, c) < 0)
        for (int j = 0; j < cols; ++j) m.at(r, j) = -m.at(r, j);
      // Hermite normalization: entries above the pivot into [0, pivot).
      for (int i = 0; i < r; ++i) {
        Int q = fdiv(m.at(i, c), m.at(r, c));
        if (q != 0)
          for (int j = 0; j < cols; ++j) m.at(i, j) -= q * m.at(r, j);
      }
      ++r;
    }
  }
  IntMatrix out(r, cols);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < cols; ++j) out.at(i, j) = m.at(i, j);
  return out;
}

std::optional<std::vector<Int>> solve_integral(const IntMatrix& a, const std::vector<Int>& b) {
  IntMatrix bm(int(b.size()), 1);
  for (int i = 0; i < int(b.size()); ++i) bm.at(i, 0) = b[i];
  auto x = solve_integral_matrix(a, bm);
  if (!x) return std::nullopt;
  std::vector<Int> out(a.cols());
  for (int i = 0; i < a.cols(); ++i) out[i] = x->at(i, 0);
  return out;
}

std::optional<IntMatrix> solve_integral_matrix(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_integral_matrix shape mismatch");
  SmithForm s = smith_normal_form(a);
  IntMatrix ub = s.u.mul(b);
  IntMatrix y(a.cols(), b.cols());
  for (int j = 0; j < b.cols(); ++j) {
    for (int i = 0; i < a.rows(); ++i) {
      if (i < s.rank) {
        if (ub.at(i, j) % s.d.at(i, i) != 0) return std::nullopt;
        y.at(i, j) = ub.at(i, j) / s.d.at(i, i);
      } else if (ub.at(i, j) != 0) {
        return std::nullopt;
      }
    }
  }
  return s.v.mul(y);
}

Int determinant(IntMatrix a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix not square");
  const int n = a.rows();
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

int rank_rational(const IntMatrix& a) {
  return smith_normal_form(a).rank;
}

AbelianInvariants chain_homology(const IntMatrix& d1, const IntMatrix& d2) {
  if (d1.cols() != d2.rows()) throw std::invalid_argument("chain_homology shape mismatch");
  if (!d1.mul(d2).is_zero()) throw std::invalid_argument("chain_homology: d1*d2 != 0");
  IntMatrix k = kernel_basis(d1);  // c1 x dim(ker)
  auto y = solve_integral_matrix(k, d2);
  if (!y) throw std::logic_error("chain_homology: image not contained in kernel");
  // Rows of y^T are the relations im(d2) imposes on ker(d1).
  return abelian_invariants(y->transpose());
}

}  // namespace normfib
