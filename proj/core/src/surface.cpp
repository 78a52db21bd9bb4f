#include "normfib/surface.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace normfib {

namespace {

long long as_ll(const Int& v) { return v.convert_to<long long>(); }

struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(n) {
    for (int i = 0; i < n; ++i) up[i] = i;
  }
  int find(int x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  }
  void join(int a, int b) { up[find(a)] = find(b); }
};

bool level_crossed(const Int& a, const Int& b, const Int& k) {
  return (a <= k && k < b) || (b <= k && k < a);
}

// Pairs up the crossings of level k + 1/2 on the boundary of a polygon with
// integer corner values, along the fan triangulation from corner 0. Side i
// joins corners i and i+1; every crossed side is matched exactly once.
std::vector<std::pair<int, int>> polygon_pairs(const std::vector<Int>& val, const Int& k) {
  int n = int(val.size());
  int ncells = 2 * n - 3;  // n sides, then diagonals (0, j) for j = 2..n-2
  auto ends = [&](int cell) -> std::pair<int, int> {
    if (cell < n) return {cell, (cell + 1) % n};
    return {0, cell - n + 2};
  };
  std::vector<char> cr(ncells, 0);
  for (int cell = 0; cell < ncells; ++cell) {
    auto [a, b] = ends(cell);
    cr[cell] = level_crossed(val[a], val[b], k);
  }
  std::vector<std::array<int, 2>> adj(ncells, {-1, -1});
  for (int j = 1; j <= n - 2; ++j) {
    int tri[3] = {j == 1 ? 0 : n + j - 2, j, j + 2 == n ? n - 1 : n + j - 1};
    int got[3], m = 0;
    for (int cell : tri)
      if (cr[cell]) got[m++] = cell;
    if (m % 2) throw std::logic_error("level crossing parity");
    if (m == 2) {
      (adj[got[0]][0] < 0 ? adj[got[0]][0] : adj[got[0]][1]) = got[1];
      (adj[got[1]][0] < 0 ? adj[got[1]][0] : adj[got[1]][1]) = got[0];
    }
  }
  std::vector<std::pair<int, int>> out;
  std::vector<char> used(ncells, 0);
  for (int s = 0; s < n; ++s) {
    if (!cr[s] || used[s]) continue;
    used[s] = 1;
    int prev = -1, cur = s;
    while (true) {
      int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      if (nxt < 0) throw std::logic_error("level chain broken");
      used[nxt] = 1;
      if (nxt < n) {
        out.push_back({s, nxt});
        break;
      }
      prev = cur;
      cur = nxt;
    }
  }
  return out;
}

// Local 1-cells of a tet boundary: 0..5 edge slots, 6 + corner_slot(v, f)
// for the link arc at corner v of face f.
int link_cell(int v, int f) { return 6 + corner_slot(v, f); }

struct CellEnds {
  int a, b;  // lift indices in the tet frame
};

long long bound_of(const DualSurface& s) {
  long long b = 0;
  for (const SurfaceComponent& c : s.components) b += std::max(0LL, -c.chi);
  return b;
}

}  // namespace

long long DualSurface::chi() const {
  long long x = 0;
  for (const SurfaceComponent& c : components) x += c.chi;
  return x;
}

DualSurface build_dual_surface(const Triangulation& t, const Cocycle& omega) {
  if (!is_cocycle(t, omega)) throw std::invalid_argument("not a cocycle");
  bool ideal = t.ideal();
  DualSurface out;
  out.omega = omega;
  out.lifts = tet_lifts(t, omega);
  const std::vector<std::vector<Int>>& lifts = out.lifts;

  auto cell_ends = [&](int cell) -> CellEnds {
    if (cell < 6) {
      auto [v, w] = slot_vertices(cell);
      if (!ideal) return {v, w};
      return {corner_slot(v, w), corner_slot(w, v)};
    }
    int cs = cell - 6, v = cs / 3, m = cs % 3, f = m >= v ? m + 1 : m;
    int x = -1, y = -1;
    for (int u = 0; u < 4; ++u)
      if (u != v && u != f) (x < 0 ? x : y) = u;
    return {corner_slot(v, x), corner_slot(v, y)};
  };

  // Surface vertices: points on edge classes, then on link arc classes.
  out.edge_points.resize(t.nedges);
  std::vector<long long> eoff(t.nedges), aoff;
  long long npts = 0;
  for (int e = 0; e < t.nedges; ++e) {
    eoff[e] = npts;
    out.edge_points[e] = abs_int(omega.edge[e]);
    npts += as_ll(out.edge_points[e]);
  }
  if (ideal) {
    out.arc_points.resize(t.nlink_arcs());
    aoff.resize(t.nlink_arcs());
    for (int a = 0; a < t.nlink_arcs(); ++a) {
      aoff[a] = npts;
      out.arc_points[a] = abs_int(omega.link[a]);
      npts += as_ll(out.arc_points[a]);
    }
  }
  out.nvertices = npts;

  // Global id of the crossing on a local 1-cell at level k + 1/2, indexed
  // along the class orientation so that all instances agree.
  auto point_id = [&](int i, int cell, const Int& k) -> long long {
    CellEnds ce = cell_ends(cell);
    const Int& la = lifts[i][ce.a];
    const Int& lb = lifts[i][ce.b];
    Int j = la < lb ? Int(k - la) : Int(la - 1 - k);  // ordinal from the a end
    if (cell < 6) {
      int e = t.edge_class[i][cell];
      Int idx = t.edge_sign[i][cell] == 1 ? j : out.edge_points[e] - 1 - j;
      return eoff[e] + as_ll(idx);
    }
    int cs = cell - 6, v = cs / 3, m = cs % 3, f = m >= v ? m + 1 : m;
    auto [arc, sg] = t.link_arc(i, f, v);
    Int idx = sg == 1 ? j : out.arc_points[arc] - 1 - j;
    return aoff[arc] + as_ll(idx);
  };

  // Face polygon in a fixed corner order shared by the two glued instances:
  // the triple w gives the face's vertices in canonical position order.
  struct Poly {
    std::vector<int> corner;  // lift indices
    std::vector<int> side;    // local 1-cells
  };
  auto face_poly = [&](int f, const std::array<int, 3>& w) -> Poly {
    Poly po;
    if (!ideal) {
      po.corner = {w[0], w[1], w[2]};
      po.side = {edge_slot(w[0], w[1]), edge_slot(w[1], w[2]), edge_slot(w[0], w[2])};
      return po;
    }
    int p = w[0], q = w[1], r = w[2];
    po.corner = {corner_slot(p, q), corner_slot(p, r), corner_slot(r, p),
                 corner_slot(r, q), corner_slot(q, r), corner_slot(q, p)};
    po.side = {link_cell(p, f), edge_slot(p, r), link_cell(r, f),
               edge_slot(q, r), link_cell(q, f), edge_slot(p, q)};
    return po;
  };

  struct ArcUse {
    int id;
    bool bdry;
    int ca, cb;
  };
  std::map<std::tuple<int, int, Int>, std::vector<ArcUse>> fuse, vuse;
  std::vector<std::array<long long, 2>> arc_ends, barc_ends;

  // Interior arcs, one pass per face class so both instances share the
  // subdivision and the arc ids.
  out.face_arcs.assign(t.nfaces, 0);
  for (int cl = 0; cl < t.nfaces; ++cl) {
    auto [i0, f0] = t.face_rep[cl];
    const Gluing& g = t.glue[i0][f0];
    std::array<int, 3> va{}, vb{};
    int m = 0;
    for (int v = 0; v < 4; ++v)
      if (v != f0) va[m++] = v;
    for (int j = 0; j < 3; ++j) vb[j] = g.perm[va[j]];
    Poly pa = face_poly(f0, va), pb = face_poly(g.face, vb);
    int np = int(pa.corner.size());
    std::vector<Int> val(np);
    for (int x = 0; x < np; ++x) val[x] = lifts[i0][pa.corner[x]];
    Int delta = val[0] - lifts[g.tet][pb.corner[0]];
    for (int x = 1; x < np; ++x)
      if (val[x] - lifts[g.tet][pb.corner[x]] != delta)
        throw std::logic_error("face frame shift mismatch");
    Int lo = *std::min_element(val.begin(), val.end());
    Int hi = *std::max_element(val.begin(), val.end());
    for (Int k = lo; k < hi; ++k) {
      for (auto [sa, sb] : polygon_pairs(val, k)) {
        int id = int(arc_ends.size());
        long long p1 = point_id(i0, pa.side[sa], k);
        long long p2 = point_id(i0, pa.side[sb], k);
        if (point_id(g.tet, pb.side[sa], k - delta) != p1 ||
            point_id(g.tet, pb.side[sb], k - delta) != p2)
          throw std::logic_error("surface point identification mismatch");
        arc_ends.push_back({p1, p2});
        fuse[{i0, f0, k}].push_back({id, false, pa.side[sa], pa.side[sb]});
        fuse[{g.tet, g.face, k - delta}].push_back({id, false, pb.side[sa], pb.side[sb]});
        ++out.face_arcs[cl];
      }
    }
  }
  out.narcs = (long long)arc_ends.size();

  // Boundary arcs on the cusp link triangles.
  if (ideal) {
    for (int i = 0; i < t.ntets; ++i)
      for (int v = 0; v < 4; ++v) {
        int ws[3], m = 0;
        for (int u = 0; u < 4; ++u)
          if (u != v) ws[m++] = u;
        int corner[3] = {corner_slot(v, ws[0]), corner_slot(v, ws[1]), corner_slot(v, ws[2])};
        int side[3] = {link_cell(v, ws[2]), link_cell(v, ws[0]), link_cell(v, ws[1])};
        std::vector<Int> val = {lifts[i][corner[0]], lifts[i][corner[1]], lifts[i][corner[2]]};
        Int lo = *std::min_element(val.begin(), val.end());
        Int hi = *std::max_element(val.begin(), val.end());
        for (Int k = lo; k < hi; ++k)
          for (auto [sa, sb] : polygon_pairs(val, k)) {
            int id = int(barc_ends.size());
            barc_ends.push_back({point_id(i, side[sa], k), point_id(i, side[sb], k)});
            vuse[{i, v, k}].push_back({id, true, side[sa], side[sb]});
          }
      }
  }
  out.nboundary_arcs = (long long)barc_ends.size();

  // Disks: circles of arcs on each tet boundary, one level at a time.
  std::vector<std::array<int, 2>> arc_disk(arc_ends.size(), {-1, -1});
  std::vector<int> barc_disk(barc_ends.size(), -1);
  for (int i = 0; i < t.ntets; ++i) {
    Int lo = *std::min_element(lifts[i].begin(), lifts[i].end());
    Int hi = *std::max_element(lifts[i].begin(), lifts[i].end());
    for (Int k = lo; k < hi; ++k) {
      std::vector<ArcUse> uses;
      for (int f = 0; f < 4; ++f) {
        auto it = fuse.find({i, f, k});
        if (it != fuse.end()) uses.insert(uses.end(), it->second.begin(), it->second.end());
      }
      if (ideal)
        for (int v = 0; v < 4; ++v) {
          auto it = vuse.find({i, v, k});
          if (it != vuse.end()) uses.insert(uses.end(), it->second.begin(), it->second.end());
        }
      std::map<int, std::vector<int>> cell_use;
      for (int u = 0; u < int(uses.size()); ++u) {
        cell_use[uses[u].ca].push_back(u);
        cell_use[uses[u].cb].push_back(u);
      }
      UnionFind uf(int(uses.size()));
      for (auto& [cell, us] : cell_use) {
        if (us.size() != 2) throw std::logic_error("level circle valence");
        uf.join(us[0], us[1]);
      }
      std::map<int, int> root_disk;
      std::map<int, std::set<int>> root_cells;
      for (int u = 0; u < int(uses.size()); ++u) {
        int r = uf.find(u);
        auto [it, fresh] = root_disk.try_emplace(r, -1);
        if (fresh) {
          it->second = int(out.disks.size());
          SurfaceDisk d;
          d.tet = i;
          d.level = k;
          out.disks.push_back(d);
        }
        SurfaceDisk& d = out.disks[it->second];
        if (uses[u].bdry) {
          d.boundary.push_back(uses[u].id);
          barc_disk[uses[u].id] = it->second;
        } else {
          d.arcs.push_back(uses[u].id);
          auto& ad = arc_disk[uses[u].id];
          (ad[0] < 0 ? ad[0] : ad[1]) = it->second;
        }
        root_cells[r].insert(uses[u].ca);
        root_cells[r].insert(uses[u].cb);
      }
      for (auto& [r, cs] : root_cells) {
        SurfaceDisk& d = out.disks[root_disk[r]];
        bool pure = true;
        for (int cell : cs)
          if (cell >= 6) pure = false;
        d.type = "band";
        if (pure && cs.size() == 3) {
          for (int v = 0; v < 4; ++v) {
            bool all = true;
            for (int cell : cs) {
              auto [a, b] = slot_vertices(cell);
              if (a != v && b != v) all = false;
            }
            if (all) d.type = "tri" + std::to_string(v);
          }
        } else if (pure && cs.size() == 4) {
          std::vector<int> missing;
          for (int s = 0; s < 6; ++s)
            if (!cs.count(s)) missing.push_back(s);
          auto [a, b] = slot_vertices(missing[0]);
          auto [x, y] = slot_vertices(missing[1]);
          if (a != x && a != y && b != x && b != y) {
            int partner = a == 0 ? b : y;
            d.type = std::string("quad0") + char('0' + partner);
          }
        }
      }
    }
  }

  // Components over disk adjacency; every interior arc joins exactly two.
  UnionFind duf(int(out.disks.size()));
  for (auto& ad : arc_disk) {
    if (ad[0] < 0 || ad[1] < 0) throw std::logic_error("interior arc disk count");
    duf.join(ad[0], ad[1]);
  }
  std::map<int, int> comp_of_root;
  for (int d = 0; d < int(out.disks.size()); ++d) {
    int r = duf.find(d);
    auto [it, fresh] = comp_of_root.try_emplace(r, int(out.components.size()));
    if (fresh) out.components.push_back({});
    out.disks[d].component = it->second;
    SurfaceComponent& c = out.components[it->second];
    ++c.disks;
    ++c.chi;
  }
  std::vector<int> pt_comp(npts, -1);
  auto place_pt = [&](long long p, int comp) {
    if (pt_comp[p] < 0) pt_comp[p] = comp;
    else if (pt_comp[p] != comp)
      throw std::logic_error("surface vertex component clash");
  };
  for (size_t a = 0; a < arc_ends.size(); ++a) {
    int comp = out.disks[arc_disk[a][0]].component;
    if (out.disks[arc_disk[a][1]].component != comp)
      throw std::logic_error("arc component clash");
    --out.components[comp].chi;
    place_pt(arc_ends[a][0], comp);
    place_pt(arc_ends[a][1], comp);
  }
  for (size_t b = 0; b < barc_ends.size(); ++b) {
    int comp = out.disks[barc_disk[b]].component;
    --out.components[comp].chi;
    place_pt(barc_ends[b][0], comp);
    place_pt(barc_ends[b][1], comp);
  }
  for (long long p = 0; p < npts; ++p) {
    if (pt_comp[p] < 0) throw std::logic_error("isolated surface vertex");
    ++out.components[pt_comp[p]].chi;
  }

  // Boundary curves: chain the cusp arcs at their shared points.
  if (!barc_ends.empty()) {
    std::map<long long, std::vector<int>> at_pt;
    for (int b = 0; b < int(barc_ends.size()); ++b) {
      at_pt[barc_ends[b][0]].push_back(b);
      at_pt[barc_ends[b][1]].push_back(b);
    }
    UnionFind buf(int(barc_ends.size()));
    for (auto& [p, bs] : at_pt) {
      if (bs.size() != 2) throw std::logic_error("boundary arc valence");
      buf.join(bs[0], bs[1]);
    }
    std::set<int> roots;
    for (int b = 0; b < int(barc_ends.size()); ++b)
      if (roots.insert(buf.find(b)).second)
        ++out.components[out.disks[barc_disk[b]].component].boundary_curves;
  }

  // The closed-case cell count has a span shortcut; the two must agree.
  if (!ideal) {
    Int sc = 0;
    for (int e = 0; e < t.nedges; ++e) sc += abs_int(omega.edge[e]);
    for (int cl = 0; cl < t.nfaces; ++cl) {
      auto [i, f] = t.face_rep[cl];
      Int lo, hi;
      bool first = true;
      for (int v = 0; v < 4; ++v) {
        if (v == f) continue;
        const Int& l = lifts[i][v];
        if (first) lo = hi = l, first = false;
        else {
          lo = std::min(lo, l);
          hi = std::max(hi, l);
        }
      }
      sc -= hi - lo;
    }
    for (int i = 0; i < t.ntets; ++i) {
      Int lo = *std::min_element(lifts[i].begin(), lifts[i].end());
      Int hi = *std::max_element(lifts[i].begin(), lifts[i].end());
      sc += hi - lo;
    }
    long long cells = out.nvertices - out.narcs + (long long)out.disks.size();
    if (as_ll(sc) != cells) throw std::logic_error("level cell count mismatch");
  }
  return out;
}

std::vector<SurfaceComponent> surface_components(const DualSurface& s) { return s.components; }

NormBound norm_upper_bound(const Triangulation& t, const Cocycle& omega) {
  DualSurface s = build_dual_surface(t, omega);
  NormBound nb;
  nb.omega = omega;
  nb.bound = bound_of(s);
  nb.witness = serialize_triangulation(t);
  return nb;
}

std::vector<NormBound> randomized_norm_search(const Triangulation& t,
                                              const std::vector<Cocycle>& classes, int budget,
                                              std::uint64_t seed, int workers) {
  if (classes.empty()) return {};
  if (workers < 1) workers = 1;
  if (budget < 0) throw std::invalid_argument("negative search budget");

  struct Cand {
    bool set = false;
    long long bound = 0;
    int ntets = 0;
    std::string canon;
    NormBound nb;
  };
  auto better = [](const Cand& a, const Cand& b) {
    if (!b.set) return true;
    if (a.bound != b.bound) return a.bound < b.bound;
    if (a.ntets != b.ntets) return a.ntets < b.ntets;
    return a.canon < b.canon;
  };

  auto run_worker = [&](int w) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * std::uint64_t(w + 1));
    Triangulation cur = t;
    std::vector<Cocycle> cs = classes;
    std::vector<Cand> best(classes.size());
    std::vector<std::string> trace;
    std::string canon = canonical_form(cur);
    auto eval = [&]() {
      for (size_t i = 0; i < cs.size(); ++i) {
        DualSurface s = build_dual_surface(cur, cs[i]);
        Cand cand;
        cand.set = true;
        cand.bound = bound_of(s);
        cand.ntets = cur.ntets;
        cand.canon = canon;
        cand.nb = {cs[i], cand.bound, serialize_triangulation(cur), trace, seed};
        if (better(cand, best[i])) best[i] = std::move(cand);
      }
    };
    eval();
    for (int step = 0; step < budget; ++step) {
      auto s23 = valid_23_sites(cur);
      auto s32 = valid_32_sites(cur);
      bool grow = rng() % 10 < 4;
      MoveResult mr;
      char buf[64];
      if ((grow || s32.empty()) && !s23.empty()) {
        auto [a, b] = s23[rng() % s23.size()];
        mr = pachner_23(cur, a, b);
        std::snprintf(buf, sizeof buf, "w%d s%d 23 %d %d", w, step, a, b);
      } else if (!s32.empty()) {
        int e = s32[int(rng() % s32.size())];
        mr = pachner_32(cur, e);
        std::snprintf(buf, sizeof buf, "w%d s%d 32 %d", w, step, e);
      } else {
        break;
      }
      trace.push_back(buf);
      for (Cocycle& cc : cs) cc = mr.transport.apply(mr.tri, cc);
      cur = std::move(mr.tri);
      canon = canonical_form(cur);
      eval();
    }
    return best;
  };

  std::vector<std::future<std::vector<Cand>>> futs;
  for (int w = 1; w < workers; ++w)
    futs.push_back(std::async(std::launch::async, run_worker, w));
  std::vector<Cand> merged = run_worker(0);
  for (auto& fut : futs) {
    std::vector<Cand> got = fut.get();
    for (size_t i = 0; i < merged.size(); ++i)
      if (better(got[i], merged[i])) merged[i] = std::move(got[i]);
  }
  std::vector<NormBound> out;
  for (Cand& c : merged) out.push_back(std::move(c.nb));
  return out;
}

std::string surface_report(const Triangulation& t, const DualSurface& s) {
  static const char* kTypes[] = {"tri0",   "tri1",   "tri2",   "tri3",
                                 "quad01", "quad02", "quad03", "band"};
  std::ostringstream os;
  os << "surface v1\n";
  os << "tets " << t.ntets << "\n";
  std::vector<std::map<std::string, long long>> cnt(t.ntets);
  for (const SurfaceDisk& d : s.disks) ++cnt[d.tet][d.type];
  for (int i = 0; i < t.ntets; ++i) {
    os << "tet " << i;
    for (const char* ty : kTypes) os << " " << ty << " " << cnt[i][ty];
    os << "\n";
  }
  for (size_t i = 0; i < s.components.size(); ++i) {
    const SurfaceComponent& c = s.components[i];
    os << "component " << i << " chi " << c.chi << " orientable " << (c.orientable ? 1 : 0)
       << " boundary " << c.boundary_curves << " disks " << c.disks << "\n";
  }
  os << "total chi " << s.chi() << " bound " << bound_of(s) << "\n";
  return os.str();
}

}  // namespace normfib
