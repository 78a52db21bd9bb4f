#include "normfib/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace normfib {

Word::Word(const std::vector<int>& letters) {
  for (int l : letters) append(l);
}

Word Word::letter(int signed_letter) {
  Word w;
  w.append(signed_letter);
  return w;
}

void Word::append(int signed_letter) {
  if (signed_letter == 0) throw std::invalid_argument("zero letter");
  if (!w_.empty() && w_.back() == -signed_letter)
    w_.pop_back();
  else
    w_.push_back(signed_letter);
}

Word Word::inverse() const {
  Word out;
  for (auto it = w_.rbegin(); it != w_.rend(); ++it) out.w_.push_back(-*it);
  return out;
}

Word Word::operator*(const Word& o) const {
  Word out = *this;
  for (int l : o.w_) out.append(l);
  return out;
}

Word Word::cyclically_reduced() const {
  std::vector<int> v = w_;
  while (v.size() >= 2 && v.front() == -v.back()) {
    v.erase(v.begin());
    v.pop_back();
  }
  Word out;
  out.w_ = v;
  return out;
}

std::vector<Int> Word::exponent_vector(int ngens) const {
  std::vector<Int> e(ngens, 0);
  for (int l : w_) {
    int g = l > 0 ? l - 1 : -l - 1;
    if (g >= ngens) throw std::out_of_range("letter outside generator range");
    e[g] += (l > 0 ? 1 : -1);
  }
  return e;
}

int Presentation::total_length() const {
  int n = 0;
  for (const auto& r : rels) n += r.size();
  return n;
}

std::vector<std::string> default_gen_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    if (n <= 26)
      names.push_back(std::string(1, char('a' + i)));
    else
      names.push_back("x" + std::to_string(i));
  }
  return names;
}

std::string word_to_string(const Word& w, const std::vector<std::string>& gens) {
  bool compact = true;
  for (const auto& g : gens)
    if (g.size() != 1 || g[0] < 'a' || g[0] > 'z') compact = false;
  std::string out;
  for (int l : w.letters()) {
    int g = l > 0 ? l - 1 : -l - 1;
    if (g >= int(gens.size())) throw std::out_of_range("letter outside generator range");
    if (compact) {
      char c = gens[g][0];
      out += (l > 0 ? c : char(c - 'a' + 'A'));
    } else {
      if (!out.empty()) out += ' ';
      out += gens[g];
      if (l < 0) out += '\'';
    }
  }
  if (out.empty()) out = compact ? "" : "";
  return out;
}

Word word_from_string(const std::string& s, const std::vector<std::string>& gens) {
  Word w;
  if (s.find(' ') == std::string::npos) {
    for (char c : s) {
      bool inv = (c >= 'A' && c <= 'Z');
      char base = inv ? char(c - 'A' + 'a') : c;
      int g = -1;
      for (int i = 0; i < int(gens.size()); ++i)
        if (gens[i].size() == 1 && gens[i][0] == base) g = i;
      if (g < 0) throw std::invalid_argument(std::string("unknown generator letter '") + c + "'");
      w.append(inv ? -(g + 1) : (g + 1));
    }
    return w;
  }
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    bool inv = !tok.empty() && tok.back() == '\'';
    if (inv) tok.pop_back();
    int g = -1;
    for (int i = 0; i < int(gens.size()); ++i)
      if (gens[i] == tok) g = i;
    if (g < 0) throw std::invalid_argument("unknown generator token '" + tok + "'");
    w.append(inv ? -(g + 1) : (g + 1));
  }
  return w;
}

namespace {

std::vector<std::string> nonblank_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(a, b - a + 1));
  }
  return out;
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
  auto lines = nonblank_lines(text);
  if (lines.empty() || lines[0] != "pres v1")
    throw std::invalid_argument("parse_presentation: missing 'pres v1' header");
  Presentation p;
  bool have_gens = false;
  for (size_t i = 1; i < lines.size(); ++i) {
    std::istringstream in(lines[i]);
    std::string kw;
    in >> kw;
    if (kw == "gens") {
      if (have_gens) throw std::invalid_argument("parse_presentation: duplicate gens line");
      std::string g;
      while (in >> g) p.gens.push_back(g);
      have_gens = true;
    } else if (kw == "rel") {
      if (!have_gens) throw std::invalid_argument("parse_presentation: rel before gens");
      std::string rest;
      std::getline(in, rest);
      size_t a = rest.find_first_not_of(' ');
      p.rels.push_back(word_from_string(a == std::string::npos ? "" : rest.substr(a), p.gens));
    } else {
      throw std::invalid_argument("parse_presentation: unknown line '" + lines[i] + "'");
    }
  }
  if (!have_gens) throw std::invalid_argument("parse_presentation: no gens line");
  return p;
}

std::string serialize_presentation(const Presentation& p) {
  std::ostringstream out;
  out << "pres v1\ngens";
  for (const auto& g : p.gens) out << ' ' << g;
  out << '\n';
  for (const Word& r : p.rels) out << "rel " << word_to_string(r, p.gens) << '\n';
  return out.str();
}

CosetTable parse_coset_table(const std::string& text, const Presentation& p) {
  auto lines = nonblank_lines(text);
  if (lines.empty() || lines[0] != "perm v1")
    throw std::invalid_argument("parse_coset_table: missing 'perm v1' header");
  int degree = -1;
  std::vector<std::vector<int>> images;
  for (size_t i = 1; i < lines.size(); ++i) {
    std::istringstream in(lines[i]);
    std::string kw;
    in >> kw;
    if (kw == "deg") {
      if (!(in >> degree) || degree < 1)
        throw std::invalid_argument("parse_coset_table: bad degree");
      images.assign(p.ngens(), {});
      for (auto& im : images) {
        im.resize(degree);
        for (int c = 0; c < degree; ++c) im[c] = c;
      }
    } else if (kw == "perm") {
      if (degree < 0) throw std::invalid_argument("parse_coset_table: perm before deg");
      std::string gname;
      in >> gname;
      int g = -1;
      for (int j = 0; j < p.ngens(); ++j)
        if (p.gens[j] == gname) g = j;
      if (g < 0) throw std::invalid_argument("parse_coset_table: unknown generator " + gname);
      std::string rest, tok;
      while (in >> tok) rest += tok;
      std::vector<bool> seen(degree, false);
      size_t pos = 0;
      while (pos < rest.size()) {
        if (rest[pos] != '(')
          throw std::invalid_argument("parse_coset_table: expected '(' in cycles");
        size_t close = rest.find(')', pos);
        if (close == std::string::npos)
          throw std::invalid_argument("parse_coset_table: unbalanced cycle");
        std::string cyc = rest.substr(pos + 1, close - pos - 1);
        for (char& c : cyc)
          if (c == ',') c = ' ';
        std::istringstream cyc_in(cyc);
        std::vector<int> pts;
        int v;
        while (cyc_in >> v) {
          if (v < 1 || v > degree || seen[v - 1])
            throw std::invalid_argument("parse_coset_table: bad or repeated point");
          seen[v - 1] = true;
          pts.push_back(v - 1);
        }
        for (size_t k = 0; k < pts.size(); ++k) images[g][pts[k]] = pts[(k + 1) % pts.size()];
        pos = close + 1;
      }
    } else {
      throw std::invalid_argument("parse_coset_table: unknown line '" + lines[i] + "'");
    }
  }
  if (degree < 0) throw std::invalid_argument("parse_coset_table: no deg line");
  return table_from_perms(p, images);
}

std::string serialize_coset_table(const CosetTable& t, const Presentation& p) {
  std::ostringstream out;
  out << "perm v1\ndeg " << t.degree << '\n';
  for (int g = 0; g < p.ngens(); ++g) {
    out << "perm " << p.gens[g] << ' ';
    std::vector<bool> seen(t.degree, false);
    bool any = false;
    for (int c = 0; c < t.degree; ++c) {
      if (seen[c] || t.act[g][c] == c) continue;
      out << '(';
      int x = c;
      bool first = true;
      while (!seen[x]) {
        seen[x] = true;
        if (!first) out << ',';
        out << x + 1;
        first = false;
        x = t.act[g][x];
      }
      out << ')';
      any = true;
    }
    if (!any) out << "()";
    out << '\n';
  }
  return out.str();
}

IntMatrix relation_matrix(const Presentation& p) {
  IntMatrix m(int(p.rels.size()), p.ngens());
  for (int i = 0; i < int(p.rels.size()); ++i) {
    auto e = p.rels[i].exponent_vector(p.ngens());
    for (int j = 0; j < p.ngens(); ++j) m.at(i, j) = e[j];
  }
  return m;
}

AbelianInvariants abelianization(const Presentation& p) {
  return abelian_invariants(relation_matrix(p));
}

void CosetTable::finish_inverses() {
  act_inv.assign(act.size(), std::vector<int>(degree, -1));
  for (int g = 0; g < int(act.size()); ++g) {
    if (int(act[g].size()) != degree) throw std::invalid_argument("ragged coset table");
    for (int c = 0; c < degree; ++c) {
      int c1 = act[g][c];
      if (c1 < 0 || c1 >= degree || act_inv[g][c1] != -1)
        throw std::invalid_argument("generator action is not a permutation");
      act_inv[g][c1] = c;
    }
  }
}

static void check_table(const Presentation& p, const CosetTable& t) {
  for (const auto& r : p.rels)
    for (int c = 0; c < t.degree; ++c)
      if (t.apply_word(c, r) != c) throw std::invalid_argument("relator acts nontrivially");
  std::vector<char> seen(t.degree, 0);
  std::deque<int> q{0};
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int c = q.front();
    q.pop_front();
    for (int g = 0; g < p.ngens(); ++g)
      for (int c2 : {t.act[g][c], t.act_inv[g][c]})
        if (!seen[c2]) {
          seen[c2] = 1;
          ++count;
          q.push_back(c2);
        }
  }
  if (count != t.degree) throw std::invalid_argument("coset action is not transitive");
}

CosetTable table_from_perms(const Presentation& p, const std::vector<std::vector<int>>& images) {
  if (int(images.size()) != p.ngens()) throw std::invalid_argument("one permutation per generator");
  CosetTable t;
  t.degree = images.empty() ? 1 : int(images[0].size());
  t.act = images;
  t.finish_inverses();
  check_table(p, t);
  return t;
}

SchreierData schreier_data(const Presentation& p, const CosetTable& t) {
  int d = t.degree, G = p.ngens();
  SchreierData sd;
  sd.table = t;
  sd.transversal.assign(d, Word());
  std::vector<std::vector<char>> tree(G, std::vector<char>(d, 0));
  std::vector<char> seen(d, 0);
  std::deque<int> q{0};
  seen[0] = 1;
  while (!q.empty()) {
    int c = q.front();
    q.pop_front();
    for (int g = 0; g < G; ++g) {
      int c1 = t.act[g][c];
      if (!seen[c1]) {
        seen[c1] = 1;
        sd.transversal[c1] = sd.transversal[c] * Word::letter(g + 1);
        tree[g][c] = 1;  // positive pair (c, g)
        q.push_back(c1);
      }
      int c2 = t.act_inv[g][c];
      if (!seen[c2]) {
        seen[c2] = 1;
        sd.transversal[c2] = sd.transversal[c] * Word::letter(-(g + 1));
        tree[g][c2] = 1;  // c2 * g == c, so the positive pair is (c2, g)
        q.push_back(c2);
      }
    }
  }
  sd.sgen_id.assign(G, std::vector<int>(d, -1));
  for (int c = 0; c < d; ++c)
    for (int g = 0; g < G; ++g)
      if (!tree[g][c]) {
        sd.sgen_id[g][c] = sd.nsgens++;
        sd.sgen_info.emplace_back(c, g);
      }
  return sd;
}

Word SchreierData::rewrite(int start, const Word& w) const {
  Word out;
  int c = start;
  for (int l : w.letters()) {
    if (l > 0) {
      int g = l - 1;
      if (sgen_id[g][c] >= 0) out.append(sgen_id[g][c] + 1);
      c = table.act[g][c];
    } else {
      int g = -l - 1;
      int c2 = table.act_inv[g][c];
      if (sgen_id[g][c2] >= 0) out.append(-(sgen_id[g][c2] + 1));
      c = c2;
    }
  }
  return out;
}

SubgroupPresentation reidemeister_schreier(const Presentation& p, const CosetTable& t) {
  SubgroupPresentation sp;
  sp.schreier = schreier_data(p, t);
  sp.pres.gens = default_gen_names(sp.schreier.nsgens);
  for (const auto& r : p.rels)
    for (int c = 0; c < t.degree; ++c) {
      Word w = sp.schreier.rewrite(c, r);
      if (!w.empty()) sp.pres.rels.push_back(w);
    }
  return sp;
}

AbelianInvariants cover_homology(const Presentation& p, const CosetTable& t) {
  int d = t.degree, G = p.ngens(), R = int(p.rels.size());
  IntMatrix d1(d, d * G);        // edges (c,g) -> vertices
  IntMatrix d2(d * G, d * R);    // relator faces -> edges
  for (int c = 0; c < d; ++c)
    for (int g = 0; g < G; ++g) {
      int e = c * G + g;
      d1.at(t.act[g][c], e) += 1;
      d1.at(c, e) -= 1;
    }
  for (int j = 0; j < R; ++j)
    for (int c = 0; c < d; ++c) {
      int col = j * d + c;
      int x = c;
      for (int l : p.rels[j].letters()) {
        if (l > 0) {
          int g = l - 1;
          d2.at(x * G + g, col) += 1;
          x = t.act[g][x];
        } else {
          int g = -l - 1;
          int x2 = t.act_inv[g][x];
          d2.at(x2 * G + g, col) -= 1;
          x = x2;
        }
      }
      if (x != c) throw std::logic_error("relator does not close up");
    }
  return chain_homology(d1, d2);
}

// Torsion coordinates for H1 of p: x in Z^g maps to z = U x where the i-th
// coordinate lives in Z/d[i] (d[i] = 0 meaning a free factor).
struct H1Coords {
  IntMatrix u;
  std::vector<Int> d;
};

static H1Coords h1_coords(const Presentation& p) {
  IntMatrix rt = relation_matrix(p).transpose();
  SmithForm sf = smith_normal_form(rt);
  H1Coords h{sf.u, {}};
  for (int i = 0; i < p.ngens(); ++i)
    h.d.push_back(i < sf.rank ? sf.d.at(i, i) : Int(0));
  return h;
}

// All homs H1 -> Z/n as value vectors on the generators, enumeration order
// fixed by mixed-radix counting over the torsion coordinates.
static std::vector<std::vector<Int>> homs_to_cyclic(const H1Coords& h, int n) {
  int g = int(h.d.size());
  std::vector<Int> count(g), step(g);
  for (int i = 0; i < g; ++i) {
    count[i] = gcd_int(h.d[i], n);
    step[i] = Int(n) / count[i];
  }
  std::vector<std::vector<Int>> out;
  std::vector<Int> k(g, 0);
  while (true) {
    std::vector<Int> vals(g, 0);
    for (int j = 0; j < g; ++j) {
      Int v = 0;
      for (int i = 0; i < g; ++i) v += k[i] * step[i] * h.u.at(i, j);
      vals[j] = fmod_pos(v, n);
    }
    out.push_back(vals);
    int pos = g - 1;
    while (pos >= 0) {
      k[pos] += 1;
      if (k[pos] < count[pos]) break;
      k[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

std::vector<CoverDescription> enumerate_cyclic_covers(const Presentation& p, int n) {
  if (n < 2) throw std::invalid_argument("cyclic cover degree must be at least 2");
  H1Coords h = h1_coords(p);
  std::set<std::vector<Int>> kernels_seen;
  std::vector<CoverDescription> out;
  for (const auto& vals : homs_to_cyclic(h, n)) {
    Int g0 = n;
    for (const Int& v : vals) g0 = gcd_int(g0, v);
    if (g0 != 1) continue;  // not surjective
    // Same kernel <=> same hom up to a unit of Z/n.
    std::vector<Int> canon;
    for (int u = 1; u < n; ++u) {
      if (gcd_int(u, n) != 1) continue;
      std::vector<Int> w(vals.size());
      for (size_t j = 0; j < vals.size(); ++j) w[j] = fmod_pos(vals[j] * u, n);
      if (canon.empty() || w < canon) canon = w;
    }
    if (!kernels_seen.insert(canon).second) continue;
    CoverDescription cd;
    cd.table.degree = n;
    cd.table.act.assign(p.ngens(), std::vector<int>(n));
    for (int g = 0; g < p.ngens(); ++g) {
      int v = int(vals[g]);
      for (int s = 0; s < n; ++s) cd.table.act[g][s] = (s + v) % n;
    }
    cd.table.finish_inverses();
    for (int g = 0; g < p.ngens(); ++g) cd.hom.push_back({vals[g]});
    cd.homology = cover_homology(p, cd.table);
    out.push_back(std::move(cd));
  }
  return out;
}

std::vector<CoverDescription> enumerate_regular_covers(const Presentation& p,
                                                       const std::vector<int>& target) {
  if (target.empty()) throw std::invalid_argument("empty target group");
  int k = int(target.size());
  H1Coords h = h1_coords(p);
  std::vector<std::vector<std::vector<Int>>> factor_homs;
  for (int t = 0; t < k; ++t) factor_homs.push_back(homs_to_cyclic(h, target[t]));
  int G = p.ngens();
  int degree = 1;
  for (int m : target) degree *= m;

  std::set<std::string> kernels_seen;
  std::vector<CoverDescription> out;
  std::vector<size_t> pick(k, 0);
  while (true) {
    // values[t][j] = component t of the image of generator j
    IntMatrix m(k, G);
    for (int t = 0; t < k; ++t)
      for (int j = 0; j < G; ++j) m.at(t, j) = factor_homs[t][pick[t]][j];

    // Surjective iff the images of the generators fill the target group.
    IntMatrix rel(G + k, k);
    for (int j = 0; j < G; ++j)
      for (int t = 0; t < k; ++t) rel.at(j, t) = m.at(t, j);
    for (int t = 0; t < k; ++t) rel.at(G + t, t) = target[t];
    AbelianInvariants quot = abelian_invariants(rel);
    bool surjective = quot.rank == 0 && quot.torsion.empty();

    if (surjective) {
      // Kernel lattice in Z^G, canonicalized by Hermite form.
      IntMatrix aug(k, G + k);
      for (int t = 0; t < k; ++t) {
        for (int j = 0; j < G; ++j) aug.at(t, j) = m.at(t, j);
        aug.at(t, G + t) = target[t];
      }
      IntMatrix kb = kernel_basis(aug);
      IntMatrix lat(kb.cols(), G);
      for (int i = 0; i < kb.cols(); ++i)
        for (int j = 0; j < G; ++j) lat.at(i, j) = kb.at(j, i);
      std::string key = row_lattice_basis(lat).to_string();
      if (kernels_seen.insert(key).second) {
        CoverDescription cd;
        cd.table.degree = degree;
        cd.table.act.assign(G, std::vector<int>(degree));
        for (int g = 0; g < G; ++g) {
          for (int s = 0; s < degree; ++s) {
            int rem = s, code = 0;
            for (int t = k - 1; t >= 0; --t) {
              int st = rem % target[t];
              rem /= target[t];
              int nt = (st + int(m.at(t, g))) % target[t];
              int w = 1;
              for (int t2 = t + 1; t2 < k; ++t2) w *= target[t2];
              code += nt * w;
            }
            cd.table.act[g][s] = code;
          }
        }
        cd.table.finish_inverses();
        for (int g = 0; g < G; ++g) {
          std::vector<Int> img;
          for (int t = 0; t < k; ++t) img.push_back(m.at(t, g));
          cd.hom.push_back(img);
        }
        cd.homology = cover_homology(p, cd.table);
        out.push_back(std::move(cd));
      }
    }

    int pos = k - 1;
    while (pos >= 0) {
      ++pick[pos];
      if (pick[pos] < factor_homs[pos].size()) break;
      pick[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

CosetTable induced_table(const SchreierData& sd, const std::vector<Int>& values, int n) {
  if (int(values.size()) != sd.nsgens) throw std::invalid_argument("one value per Schreier generator");
  int d = sd.table.degree, G = int(sd.table.act.size());
  CosetTable t;
  t.degree = d * n;
  t.act.assign(G, std::vector<int>(t.degree));
  for (int g = 0; g < G; ++g)
    for (int c = 0; c < d; ++c) {
      int c1 = sd.table.act[g][c];
      int id = sd.sgen_id[g][c];
      int shift = id >= 0 ? int(fmod_pos(values[id], n)) : 0;
      for (int s = 0; s < n; ++s) t.act[g][c * n + s] = c1 * n + (s + shift) % n;
    }
  t.finish_inverses();
  return t;
}

CosetTable intersect_subgroups(int ngens, const CosetTable& t1, const CosetTable& t2) {
  std::vector<int> idx(size_t(t1.degree) * t2.degree, -1);
  std::vector<std::pair<int, int>> pairs;
  auto id_of = [&](int a, int b) -> int& { return idx[size_t(a) * t2.degree + b]; };
  std::deque<std::pair<int, int>> q;
  id_of(0, 0) = 0;
  pairs.emplace_back(0, 0);
  q.emplace_back(0, 0);
  while (!q.empty()) {
    auto [a, b] = q.front();
    q.pop_front();
    for (int g = 0; g < ngens; ++g) {
      for (auto [a2, b2] : {std::pair{t1.act[g][a], t2.act[g][b]},
                            std::pair{t1.act_inv[g][a], t2.act_inv[g][b]}}) {
        if (id_of(a2, b2) < 0) {
          id_of(a2, b2) = int(pairs.size());
          pairs.emplace_back(a2, b2);
          q.emplace_back(a2, b2);
        }
      }
    }
  }
  CosetTable t;
  t.degree = int(pairs.size());
  t.act.assign(ngens, std::vector<int>(t.degree));
  for (int i = 0; i < t.degree; ++i)
    for (int g = 0; g < ngens; ++g)
      t.act[g][i] = id_of(t1.act[g][pairs[i].first], t2.act[g][pairs[i].second]);
  t.finish_inverses();
  return t;
}

}  // namespace normfib
