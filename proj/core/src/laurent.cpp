#include "normfib/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace normfib {

LaurentPoly LaurentPoly::constant(int nvars, const Int& c) {
  LaurentPoly p(nvars);
  if (c != 0) p.terms_[Exp(nvars, 0)] = c;
  return p;
}

LaurentPoly LaurentPoly::monomial(int nvars, const Exp& e, const Int& c) {
  if (int(e.size()) != nvars) throw std::invalid_argument("monomial: exponent size");
  LaurentPoly p(nvars);
  if (c != 0) p.terms_[e] = c;
  return p;
}

LaurentPoly LaurentPoly::variable(int nvars, int i, int power) {
  Exp e(nvars, 0);
  e[i] = power;
  return monomial(nvars, e, 1);
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  return terms_.begin()->first == Exp(nvars_, 0);
}

Int LaurentPoly::coeff(const Exp& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Int(0) : it->second;
}

void LaurentPoly::add_term(const Exp& e, const Int& c) {
  if (int(e.size()) != nvars_) throw std::invalid_argument("add_term: exponent size");
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_[e] = c;
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("poly + : nvars mismatch");
  LaurentPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("poly - : nvars mismatch");
  LaurentPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("poly * : nvars mismatch");
  LaurentPoly r(nvars_);
  Exp e(nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly r = constant(nvars_, 1);
  LaurentPoly base = *this;
  while (n) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

LaurentPoly LaurentPoly::mul_monomial(const Exp& shift, const Int& c) const {
  if (int(shift.size()) != nvars_) throw std::invalid_argument("mul_monomial: exponent size");
  LaurentPoly r(nvars_);
  if (c == 0) return r;
  Exp e(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + shift[i];
    r.terms_[e] = ca * c;
  }
  return r;
}

LaurentPoly LaurentPoly::monomial_substitution(const IntMatrix& m) const {
  if (m.cols() != nvars_) throw std::invalid_argument("monomial_substitution: shape");
  LaurentPoly r(m.rows());
  Exp e(m.rows());
  for (const auto& [ea, ca] : terms_) {
    for (int i = 0; i < m.rows(); ++i) {
      Int acc = 0;
      for (int j = 0; j < nvars_; ++j) acc += m.at(i, j) * ea[j];
      e[i] = int(acc);
    }
    r.add_term(e, ca);
  }
  return r;
}

Exp LaurentPoly::min_exponents() const {
  Exp m(nvars_, 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first) {
      m = e;
      first = false;
    } else {
      for (int i = 0; i < nvars_; ++i) m[i] = std::min(m[i], e[i]);
    }
  }
  return m;
}

Exp LaurentPoly::max_exponents() const {
  Exp m(nvars_, 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first) {
      m = e;
      first = false;
    } else {
      for (int i = 0; i < nvars_; ++i) m[i] = std::max(m[i], e[i]);
    }
  }
  return m;
}

std::vector<Exp> LaurentPoly::support() const {
  std::vector<Exp> s;
  s.reserve(terms_.size());
  for (const auto& [e, c] : terms_) s.push_back(e);
  return s;
}

int LaurentPoly::max_deg(int var) const {
  int d = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first || e[var] > d) d = e[var];
    first = false;
  }
  return d;
}

int LaurentPoly::min_deg(int var) const {
  int d = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first || e[var] < d) d = e[var];
    first = false;
  }
  return d;
}

std::string LaurentPoly::to_string(const std::vector<std::string>& vars) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Int cc = c;
    if (first) {
      if (cc < 0) {
        os << "-";
        cc = -cc;
      }
    } else {
      os << (cc < 0 ? " - " : " + ");
      if (cc < 0) cc = -cc;
    }
    first = false;
    bool allzero = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    if (cc != 1 || allzero) os << cc;
    bool printed = (cc != 1 || allzero);
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (printed) os << "*";
      os << vars[i];
      if (e[i] != 1) os << "^" << e[i];
      printed = true;
    }
  }
  return os.str();
}

LaurentPoly canonical_unit_form(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  const Exp& lexmin = p.terms().begin()->first;
  Exp shift(p.nvars());
  for (int i = 0; i < p.nvars(); ++i) shift[i] = -lexmin[i];
  Int sgn = p.terms().begin()->second < 0 ? -1 : 1;
  return p.mul_monomial(shift, sgn);
}

bool equal_up_to_unit(const LaurentPoly& a, const LaurentPoly& b) {
  return canonical_unit_form(a) == canonical_unit_form(b);
}

Int content(const LaurentPoly& p) {
  Int g = 0;
  for (const auto& [e, c] : p.terms()) {
    g = gcd_int(g, c);
    if (g == 1) break;
  }
  return g;
}

LaurentPoly primitive_part(const LaurentPoly& p) {
  Int g = content(p);
  if (g == 0 || g == 1) return p;
  LaurentPoly r(p.nvars());
  for (const auto& [e, c] : p.terms()) r.add_term(e, c / g);
  return r;
}

namespace {

// Shift so the componentwise minimum exponent is 0 in every variable.
LaurentPoly poly_part(const LaurentPoly& p) {
  Exp m = p.min_exponents();
  for (int& x : m) x = -x;
  return p.mul_monomial(m, 1);
}

// Coefficient of x_m^k viewed as a polynomial in the other variables (those
// keep their positions; variable m is set to exponent 0).
std::map<int, LaurentPoly> slices_wrt(const LaurentPoly& p, int m) {
  std::map<int, LaurentPoly> out;
  for (const auto& [e, c] : p.terms()) {
    Exp r = e;
    int k = r[m];
    r[m] = 0;
    auto it = out.find(k);
    if (it == out.end()) it = out.emplace(k, LaurentPoly(p.nvars())).first;
    it->second.add_term(r, c);
  }
  return out;
}

LaurentPoly lead_coeff_wrt(const LaurentPoly& p, int m, int* deg_out) {
  int d = p.max_deg(m);
  LaurentPoly lc(p.nvars());
  for (const auto& [e, c] : p.terms())
    if (e[m] == d) {
      Exp r = e;
      r[m] = 0;
      lc.add_term(r, c);
    }
  if (deg_out) *deg_out = d;
  return lc;
}

LaurentPoly gcd_inner(const LaurentPoly& a, const LaurentPoly& b);

// Gcd of the x_m-coefficients of p.
LaurentPoly content_wrt(const LaurentPoly& p, int m) {
  LaurentPoly g(p.nvars());
  for (const auto& [k, c] : slices_wrt(p, m)) {
    g = g.is_zero() ? c : gcd_inner(g, c);
    if (g.is_constant() && content(g) == 1) break;
  }
  return g;
}

LaurentPoly pseudo_rem_wrt(LaurentPoly a, const LaurentPoly& b, int m) {
  int db = 0;
  LaurentPoly lcb = lead_coeff_wrt(b, m, &db);
  while (!a.is_zero()) {
    int da = 0;
    LaurentPoly lca = lead_coeff_wrt(a, m, &da);
    if (da < db) break;
    Exp shift(a.nvars(), 0);
    shift[m] = da - db;
    a = a * lcb - (lca * b).mul_monomial(shift, 1);
  }
  return a;
}

// Both inputs nonzero polynomials (componentwise min exponent 0).
LaurentPoly gcd_inner(const LaurentPoly& a, const LaurentPoly& b) {
  // Pick the active variable with smallest positive combined span.
  int m = -1, best = 0;
  for (int v = 0; v < a.nvars(); ++v) {
    int span = std::max(a.max_deg(v) - a.min_deg(v), b.max_deg(v) - b.min_deg(v));
    if (span > 0 && (m < 0 || span < best)) {
      m = v;
      best = span;
    }
  }
  if (m < 0) return LaurentPoly::constant(a.nvars(), gcd_int(content(a), content(b)));

  LaurentPoly pa = poly_part(a), pb = poly_part(b);
  LaurentPoly ca = content_wrt(pa, m), cb = content_wrt(pb, m);
  LaurentPoly cg = gcd_inner(ca, cb);
  auto qa = divide_exact(pa, ca);
  auto qb = divide_exact(pb, cb);
  if (!qa || !qb) throw std::logic_error("gcd_inner: content division failed");
  LaurentPoly x = *qa, y = *qb;
  while (!y.is_zero()) {
    if (x.max_deg(m) - x.min_deg(m) < y.max_deg(m) - y.min_deg(m)) std::swap(x, y);
    LaurentPoly r = pseudo_rem_wrt(poly_part(x), poly_part(y), m);
    x = y;
    if (r.is_zero()) {
      y = r;
    } else {
      LaurentPoly rc = content_wrt(r, m);
      auto q = divide_exact(r, rc);
      if (!q) throw std::logic_error("gcd_inner: primitive reduction failed");
      y = primitive_part(*q);
    }
  }
  return cg * x;
}

}  // namespace

std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return LaurentPoly(a.nvars());
  Exp sa = a.min_exponents(), sb = b.min_exponents();
  LaurentPoly pa = poly_part(a), pb = poly_part(b);
  LaurentPoly q(a.nvars());
  Exp d(a.nvars());
  while (!pa.is_zero()) {
    const auto& [ea, calead] = *pa.terms().rbegin();
    const auto& [eb, cblead] = *pb.terms().rbegin();
    for (int i = 0; i < a.nvars(); ++i) {
      d[i] = ea[i] - eb[i];
      if (d[i] < 0) return std::nullopt;
    }
    if (calead % cblead != 0) return std::nullopt;
    Int qc = calead / cblead;
    q.add_term(d, qc);
    pa = pa - pb.mul_monomial(d, qc);
  }
  Exp net(a.nvars());
  for (int i = 0; i < a.nvars(); ++i) net[i] = sa[i] - sb[i];
  return q.mul_monomial(net, 1);
}

LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("laurent_gcd: nvars mismatch");
  if (a.is_zero()) return canonical_unit_form(b);
  if (b.is_zero()) return canonical_unit_form(a);
  return canonical_unit_form(gcd_inner(poly_part(a), poly_part(b)));
}

LaurentPoly laurent_det(std::vector<std::vector<LaurentPoly>> m) {
  int n = int(m.size());
  if (n == 0) throw std::invalid_argument("laurent_det: empty matrix has no nvars");
  int nv = m[0][0].nvars();
  for (auto& row : m)
    if (int(row.size()) != n) throw std::invalid_argument("laurent_det: not square");
  LaurentPoly prev = LaurentPoly::constant(nv, 1);
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (!m[i][k].is_zero()) { p = i; break; }
      if (p < 0) return LaurentPoly(nv);
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        auto q = divide_exact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
        if (!q) throw std::logic_error("laurent_det: inexact interior division");
        m[i][j] = *q;
      }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

}  // namespace normfib
