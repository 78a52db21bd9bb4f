#include "normfib/tietze.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace normfib {

namespace {

using Letters = std::vector<int>;

Letters free_reduce(const Letters& w) {
  Letters out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Letters cyc_reduce(Letters w) {
  w = free_reduce(w);
  size_t a = 0, b = w.size();
  while (b - a >= 2 && w[a] == -w[b - 1]) ++a, --b;
  return Letters(w.begin() + a, w.begin() + b);
}

Letters rot(const Letters& w, int k) {
  if (w.empty()) return w;
  k = ((k % int(w.size())) + int(w.size())) % int(w.size());
  Letters out(w.begin() + k, w.end());
  out.insert(out.end(), w.begin(), w.begin() + k);
  return out;
}

Letters inv(const Letters& w) {
  Letters out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

// Lex-least rotation of w or w^-1; identifies relators up to the moves that
// leave a relator set equivalent.
Letters canonical_cyclic(const Letters& w) {
  Letters best = w;
  for (const Letters& base : {w, inv(w)})
    for (int k = 0; k < int(base.size()); ++k) {
      Letters r = rot(base, k);
      if (r < best) best = r;
    }
  return best;
}

struct TState {
  int ngens = 0;
  std::vector<Letters> rels;

  long long total_length() const {
    long long t = 0;
    for (const auto& r : rels) t += (long long)r.size();
    return t;
  }
  std::tuple<int, long long, size_t> score() const {
    return {ngens, total_length(), rels.size()};
  }
};

TState state_from(const Presentation& p) {
  TState st;
  st.ngens = p.ngens();
  for (const auto& r : p.rels) st.rels.push_back(cyc_reduce(r.letters()));
  return st;
}

Presentation to_presentation(const TState& st) {
  Presentation p;
  p.gens = default_gen_names(st.ngens);
  for (const auto& r : st.rels)
    if (!r.empty()) p.rels.push_back(Word(r));
  return p;
}

void check_rel_index(const TState& st, int i) {
  if (i < 0 || i >= int(st.rels.size())) throw std::invalid_argument("relator index out of range");
}

void check_gen_index(const TState& st, int g) {
  if (g < 0 || g >= st.ngens) throw std::invalid_argument("generator index out of range");
}

int count_gen(const Letters& w, int g) {
  int n = 0;
  for (int l : w)
    if (l == g + 1 || l == -(g + 1)) ++n;
  return n;
}

void substitute(Letters& w, int g, const Letters& pos_image) {
  Letters ninv = inv(pos_image);
  Letters out;
  for (int l : w) {
    if (l == g + 1)
      out.insert(out.end(), pos_image.begin(), pos_image.end());
    else if (l == -(g + 1))
      out.insert(out.end(), ninv.begin(), ninv.end());
    else
      out.push_back(l);
  }
  w = cyc_reduce(out);
}

void renumber_down(Letters& w, int g) {
  for (int& l : w) {
    int a = std::abs(l), s = l > 0 ? 1 : -1;
    if (a > g + 1) l = s * (a - 1);
  }
}

void apply_op(TState& st, const TietzeOp& op) {
  switch (op.kind) {
    case TietzeOp::Kind::Rotate:
      check_rel_index(st, op.i);
      st.rels[op.i] = cyc_reduce(rot(st.rels[op.i], op.k));
      break;
    case TietzeOp::Kind::InvertRel:
      check_rel_index(st, op.i);
      st.rels[op.i] = cyc_reduce(inv(st.rels[op.i]));
      break;
    case TietzeOp::Kind::MultRight: {
      check_rel_index(st, op.i);
      check_rel_index(st, op.j);
      if (op.i == op.j) throw std::invalid_argument("MultRight needs distinct relators");
      Letters u = rot(st.rels[op.j], op.k);
      if (op.s < 0) u = inv(u);
      Letters w = st.rels[op.i];
      w.insert(w.end(), u.begin(), u.end());
      st.rels[op.i] = cyc_reduce(w);
      break;
    }
    case TietzeOp::Kind::DropRel: {
      check_rel_index(st, op.i);
      const Letters& w = st.rels[op.i];
      bool ok = w.empty();
      if (!ok) {
        Letters cw = canonical_cyclic(w);
        for (int j = 0; j < int(st.rels.size()) && !ok; ++j)
          if (j != op.i && canonical_cyclic(st.rels[j]) == cw) ok = true;
      }
      if (!ok) throw std::invalid_argument("DropRel needs an empty or duplicate relator");
      st.rels.erase(st.rels.begin() + op.i);
      break;
    }
    case TietzeOp::Kind::Eliminate: {
      check_rel_index(st, op.i);
      check_gen_index(st, op.g);
      Letters w = st.rels[op.i];
      if (count_gen(w, op.g) != 1)
        throw std::invalid_argument("Eliminate needs a unique occurrence");
      int pos = -1;
      for (int t = 0; t < int(w.size()); ++t)
        if (std::abs(w[t]) == op.g + 1) pos = t;
      w = rot(w, pos);
      if (w[0] < 0) {
        w = inv(w);
        w = rot(w, int(w.size()) - 1);
      }
      // w = g * v, so g = v^-1
      Letters v(w.begin() + 1, w.end());
      Letters image = inv(v);
      st.rels.erase(st.rels.begin() + op.i);
      for (auto& r : st.rels) {
        substitute(r, op.g, image);
        renumber_down(r, op.g);
      }
      --st.ngens;
      break;
    }
    case TietzeOp::Kind::Nielsen: {
      check_gen_index(st, op.g);
      check_gen_index(st, op.j);
      if (op.g == op.j) throw std::invalid_argument("Nielsen needs distinct generators");
      int X = op.g + 1, Y = op.j + 1;
      for (auto& r : st.rels) {
        Letters out;
        for (int l : r) {
          if (l == X) {
            if (op.side == 1) {
              out.push_back(X);
              out.push_back(-op.s * Y);
            } else {
              out.push_back(-op.s * Y);
              out.push_back(X);
            }
          } else if (l == -X) {
            if (op.side == 1) {
              out.push_back(op.s * Y);
              out.push_back(-X);
            } else {
              out.push_back(-X);
              out.push_back(op.s * Y);
            }
          } else {
            out.push_back(l);
          }
        }
        r = cyc_reduce(out);
      }
      break;
    }
  }
}

}  // namespace

std::string op_to_string(const TietzeOp& op) {
  std::ostringstream o;
  switch (op.kind) {
    case TietzeOp::Kind::Rotate: o << "rot " << op.i << ' ' << op.k; break;
    case TietzeOp::Kind::InvertRel: o << "inv " << op.i; break;
    case TietzeOp::Kind::MultRight: o << "mul " << op.i << ' ' << op.j << ' ' << op.s << ' ' << op.k; break;
    case TietzeOp::Kind::DropRel: o << "drop " << op.i; break;
    case TietzeOp::Kind::Eliminate: o << "elim " << op.g << ' ' << op.i; break;
    case TietzeOp::Kind::Nielsen: o << "nielsen " << op.g << ' ' << op.j << ' ' << op.s << ' ' << op.side; break;
  }
  return o.str();
}

TietzeOp op_from_string(const std::string& s) {
  std::istringstream in(s);
  std::string kind;
  in >> kind;
  TietzeOp op;
  bool ok = bool(in);
  if (kind == "rot") {
    op.kind = TietzeOp::Kind::Rotate;
    ok = bool(in >> op.i >> op.k);
  } else if (kind == "inv") {
    op.kind = TietzeOp::Kind::InvertRel;
    ok = bool(in >> op.i);
  } else if (kind == "mul") {
    op.kind = TietzeOp::Kind::MultRight;
    ok = bool(in >> op.i >> op.j >> op.s >> op.k);
  } else if (kind == "drop") {
    op.kind = TietzeOp::Kind::DropRel;
    ok = bool(in >> op.i);
  } else if (kind == "elim") {
    op.kind = TietzeOp::Kind::Eliminate;
    ok = bool(in >> op.g >> op.i);
  } else if (kind == "nielsen") {
    op.kind = TietzeOp::Kind::Nielsen;
    ok = bool(in >> op.g >> op.j >> op.s >> op.side);
  } else {
    ok = false;
  }
  if (!ok) throw std::invalid_argument("bad op string: " + s);
  return op;
}

Presentation replay_tietze(const Presentation& p, const std::vector<TietzeOp>& log) {
  TState st = state_from(p);
  for (const auto& op : log) apply_op(st, op);
  return to_presentation(st);
}

namespace {

struct Simplifier {
  TState st;
  std::vector<TietzeOp> log;
  long long budget;
  SimplifyOptions opts;

  TState best_state;
  size_t best_log = 0;

  explicit Simplifier(const Presentation& p, const SimplifyOptions& o)
      : st(state_from(p)), budget(o.budget), opts(o) {
    best_state = st;
  }

  void apply(const TietzeOp& op) {
    apply_op(st, op);
    log.push_back(op);
  }

  void note_best() {
    if (st.score() < best_state.score()) {
      best_state = st;
      best_log = log.size();
    }
  }

  bool drop_pass() {
    bool changed = false;
    for (int i = int(st.rels.size()) - 1; i >= 0; --i)
      if (st.rels[i].empty()) {
        apply({.kind = TietzeOp::Kind::DropRel, .i = i});
        changed = true;
      }
    // duplicates up to rotation and inversion, shortest survivor first
    std::map<Letters, int> seen;
    std::vector<int> doomed;
    for (int i = 0; i < int(st.rels.size()); ++i) {
      if (int(st.rels[i].size()) > 220) continue;
      budget -= int(st.rels[i].size());
      Letters c = canonical_cyclic(st.rels[i]);
      auto [it, fresh] = seen.emplace(std::move(c), i);
      if (!fresh) doomed.push_back(i);
    }
    for (auto it = doomed.rbegin(); it != doomed.rend(); ++it) {
      apply({.kind = TietzeOp::Kind::DropRel, .i = *it});
      changed = true;
    }
    return changed;
  }

  // Exact length change of the generator substitution g <- g * y^s (side 1)
  // or y^s * g (side 0), by local cancellation counting.
  long long nielsen_delta(int g, int y, int s, int side) const {
    int X = g + 1, Y = y + 1;
    long long d = 0;
    for (const auto& r : st.rels) {
      int n = int(r.size());
      for (int t = 0; t < n; ++t) {
        if (r[t] == X) {
          int nb = side == 1 ? r[(t + 1) % n] : r[(t - 1 + n) % n];
          d += (nb == s * Y) ? -1 : 1;
        } else if (r[t] == -X) {
          int nb = side == 1 ? r[(t - 1 + n) % n] : r[(t + 1) % n];
          d += (nb == -s * Y) ? -1 : 1;
        }
      }
    }
    return d;
  }

  bool nielsen_pass() {
    bool changed = false;
    while (budget > 0) {
      // candidate generator pairs that sit next to each other somewhere
      std::set<std::pair<int, int>> adj;
      for (const auto& r : st.rels) {
        int n = int(r.size());
        for (int t = 0; t < n; ++t) {
          int a = std::abs(r[t]) - 1, b = std::abs(r[(t + 1) % n]) - 1;
          if (a != b) {
            adj.insert({a, b});
            adj.insert({b, a});
          }
        }
      }
      long long best_d = 0;
      TietzeOp best_op;
      for (auto [g, y] : adj)
        for (int s : {1, -1})
          for (int side : {1, 0}) {
            budget -= 4;
            long long d = nielsen_delta(g, y, s, side);
            if (d < best_d) {
              best_d = d;
              best_op = {.kind = TietzeOp::Kind::Nielsen, .j = y, .g = g, .s = s, .side = side};
            }
          }
      if (best_d >= 0) break;
      long long before = st.total_length();
      apply(best_op);
      changed = true;
      if (st.total_length() > before + best_d)
        throw std::logic_error("nielsen delta mismatch");
      note_best();
    }
    return changed;
  }

  bool subword_pass() {
    bool changed = false;
    bool progress = true;
    while (progress && budget > 0) {
      progress = false;
      std::vector<int> order(st.rels.size());
      for (int i = 0; i < int(order.size()); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        return st.rels[a].size() < st.rels[b].size() || (st.rels[a].size() == st.rels[b].size() && a < b);
      });
      for (int j : order) {
        int lj = int(st.rels[j].size());
        if (lj < 2 || lj > opts.max_relator_for_subword) continue;
        int h = lj / 2 + 1;
        for (int s : {1, -1}) {
          Letters w = s > 0 ? st.rels[j] : inv(st.rels[j]);
          for (int k = 0; k < lj; ++k) {
            // piece whose inverse is the prefix of rot_k(w)
            Letters u = rot(w, k);
            Letters piece = inv(Letters(u.begin(), u.begin() + h));
            for (int i = 0; i < int(st.rels.size()); ++i) {
              if (i == j) continue;
              int li = int(st.rels[i].size());
              if (li < h) continue;
              Letters dbl = st.rels[i];
              dbl.insert(dbl.end(), st.rels[i].begin(), st.rels[i].end());
              int found = -1;
              for (int pos = 0; pos + 1 <= li && found < 0; ++pos) {
                budget -= 1;
                bool m = true;
                for (int t = 0; t < h; ++t)
                  if (dbl[pos + t] != piece[t]) {
                    m = false;
                    break;
                  }
                if (m) found = pos;
              }
              if (found >= 0) {
                // rotate i so the piece is a suffix, then cancel against j
                apply({.kind = TietzeOp::Kind::Rotate, .i = i, .k = (found + h) % li});
                apply({.kind = TietzeOp::Kind::MultRight,
                       .i = i,
                       .j = j,
                       .s = s,
                       .k = s > 0 ? k : (lj - k) % lj});
                if (int(st.rels[i].size()) >= li) throw std::logic_error("subword move grew a relator");
                changed = progress = true;
                note_best();
              }
              if (budget <= 0) return changed;
            }
          }
        }
      }
    }
    return changed;
  }

  bool elimination_pass() {
    bool changed = false;
    while (st.ngens > 0 && budget > 0) {
      long long total = st.total_length();
      long long best_total = -1;
      TietzeOp best_op;
      int best_len = 0;
      for (int i = 0; i < int(st.rels.size()); ++i) {
        for (int g = 0; g < st.ngens; ++g) {
          budget -= 1;
          if (count_gen(st.rels[i], g) != 1) continue;
          long long li = (long long)st.rels[i].size();
          long long occ = 0;
          for (int r = 0; r < int(st.rels.size()); ++r)
            if (r != i) occ += count_gen(st.rels[r], g);
          long long predicted = total - li + occ * (li - 2);
          if (best_total < 0 || predicted < best_total) {
            best_total = predicted;
            best_op = {.kind = TietzeOp::Kind::Eliminate, .i = i, .g = g};
            best_len = int(li);
          }
        }
      }
      if (best_total < 0) break;
      if (best_total > 2 * total + 64 && best_len > 4) break;
      apply(best_op);
      changed = true;
      note_best();
    }
    return changed;
  }

  void main_loop() {
    for (int cycle = 0; cycle < 200 && budget > 0; ++cycle) {
      bool changed = false;
      changed |= drop_pass();
      changed |= subword_pass();
      changed |= nielsen_pass();
      changed |= elimination_pass();
      note_best();
      if (!changed) break;
    }
  }
};

}  // namespace

SimplifyResult simplify_presentation(const Presentation& p, const SimplifyOptions& opts) {
  Simplifier s(p, opts);
  s.note_best();
  s.main_loop();
  std::mt19937_64 rng(opts.seed);
  for (int r = 0; r < opts.restarts && s.budget > 0 && s.st.ngens >= 2; ++r) {
    // randomized escape, then settle again
    for (int e = 0; e < 4; ++e) {
      int g = int(rng() % std::uint64_t(s.st.ngens));
      int y = int(rng() % std::uint64_t(s.st.ngens - 1));
      if (y >= g) ++y;
      int sign = (rng() & 1) ? 1 : -1;
      int side = int(rng() & 1);
      s.apply({.kind = TietzeOp::Kind::Nielsen, .j = y, .g = g, .s = sign, .side = side});
    }
    s.main_loop();
  }
  SimplifyResult out;
  out.pres = to_presentation(s.best_state);
  out.log.assign(s.log.begin(), s.log.begin() + s.best_log);
  return out;
}

SurfaceCertificate surface_group_certificate(const Presentation& p, const SimplifyOptions& opts) {
  SimplifyResult sr = simplify_presentation(p, opts);
  SurfaceCertificate cert;
  cert.simplified = sr.pres;
  cert.log = sr.log;
  const int n = cert.simplified.ngens();
  if (cert.simplified.rels.empty()) {
    cert.is_free = true;
    cert.free_rank = n;
    return cert;
  }
  if (cert.simplified.rels.size() != 1) return cert;
  const Letters w = cert.simplified.rels[0].letters();
  const int L = int(w.size());
  if (L != 2 * n || n == 0) return cert;
  for (int g = 0; g < n; ++g)
    if (count_gen(w, g) != 2) return cert;

  // glue the relator polygon; corner c sits between edges c-1 and c
  std::vector<int> uf(L);
  for (int i = 0; i < L; ++i) uf[i] = i;
  std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
  auto unite = [&](int a, int b) { uf[find(a)] = find(b); };
  for (int g = 0; g < n; ++g) {
    std::vector<int> where;
    for (int t = 0; t < L; ++t)
      if (std::abs(w[t]) == g + 1) where.push_back(t);
    int p0 = where[0], p1 = where[1];
    if (w[p0] == -w[p1]) {
      int a = w[p0] > 0 ? p0 : p1;  // positive occurrence
      int b = a == p0 ? p1 : p0;
      unite(a, (b + 1) % L);
      unite((a + 1) % L, b);
    } else {
      unite(p0, p1);
      unite((p0 + 1) % L, (p1 + 1) % L);
    }
  }
  std::set<int> classes;
  for (int i = 0; i < L; ++i) classes.insert(find(i));
  if (classes.size() != 1) return cert;

  cert.certified = true;
  cert.orientable = true;
  for (int g = 0; g < n; ++g) {
    int sum = 0;
    for (int t = 0; t < L; ++t) {
      if (w[t] == g + 1) ++sum;
      if (w[t] == -(g + 1)) --sum;
    }
    if (sum != 0) cert.orientable = false;
  }
  cert.genus = cert.orientable ? n / 2 : n;
  return cert;
}

}  // namespace normfib
