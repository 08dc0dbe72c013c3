#include "dividekit/surface.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

namespace dividekit {

namespace {

// Local block layout. Vertices 0..19, edges 0..27, cells 0..7.
// The block is the standard crossing piece: two bands joined by a tube.
// Band X spans roles 0 and 2 (each has the + quadrant on its left), band Y
// spans roles 1 and 3. Cells: XN, XS (band X halves around the tube top),
// YE, YW (band Y halves around the tube bottom), U0..U3 (tube sectors).
enum LV {
  T0 = 0, T1, T2, T3, B0, B1, B2, B3,
  XNE = 8, XE, XSE, XNW, XW, XSW,
  YNE = 14, YN, YNW, YSE, YS, YSW,
};
enum LE {
  ta0 = 0, ta1, ta2, ta3, ba0 = 4, ba1, ba2, ba3, vt0 = 8, vt1, vt2, vt3,
  segE = 12, segW, segN, segS,
  xn = 16, xs, xen, xes, xwn, xws,
  ye = 22, yw, yne, ynw, yse, ysw,
};
enum LC { XN_ = 0, XS_, YE_, YW_, U0_, U1_, U2_, U3_ };

constexpr int kLocalVerts = 20;
constexpr int kLocalEdges = 28;
constexpr int kLocalCells = 8;

struct LocalEdge { int from, to; };
constexpr LocalEdge kEdgeEnds[kLocalEdges] = {
    {T0, T1}, {T1, T2}, {T2, T3}, {T3, T0},          // ta
    {B0, B1}, {B1, B2}, {B2, B3}, {B3, B0},          // ba
    {T0, B0}, {T1, B1}, {T2, B2}, {T3, B3},          // vt
    {T0, XE}, {XW, T2}, {B1, YN}, {YS, B3},          // segE segW segN segS
    {XNW, XNE}, {XSW, XSE}, {XNE, XE}, {XE, XSE},    // xn xs xen xes
    {XNW, XW}, {XW, XSW},                            // xwn xws
    {YSE, YNE}, {YSW, YNW}, {YNE, YN}, {YN, YNW},    // ye yw yne ynw
    {YS, YSE}, {YSW, YS},                            // yse ysw
};

using Use = std::pair<int, bool>;  // local edge, forward
const std::vector<Use> kCellTable[kLocalCells] = {
    // XN
    {{xen, false}, {xn, false}, {xwn, true}, {segW, true}, {ta1, false}, {ta0, false},
     {segE, true}},
    // XS
    {{segE, false}, {ta3, false}, {ta2, false}, {segW, false}, {xws, true}, {xs, true},
     {xes, false}},
    // YE
    {{yne, false}, {ye, false}, {yse, false}, {segS, true}, {ba3, true}, {ba0, true},
     {segN, true}},
    // YW
    {{segN, false}, {ba1, true}, {ba2, true}, {segS, false}, {ysw, false}, {yw, true},
     {ynw, false}},
    // U0..U3
    {{ta0, true}, {vt1, true}, {ba0, false}, {vt0, false}},
    {{ta1, true}, {vt2, true}, {ba1, false}, {vt1, false}},
    {{ta2, true}, {vt3, true}, {ba2, false}, {vt2, false}},
    {{ta3, true}, {vt0, true}, {ba3, false}, {vt3, false}},
};

// Gluing slot of role r: lane edges and corner vertices, plus whether each
// lane's reference direction runs from the L-corner side toward the mid/R.
struct Slot {
  int left_edge, right_edge;
  int lcorner, mid, rcorner;
  bool l_aligned, r_aligned;
};
constexpr Slot kSlots[4] = {
    {xen, xes, XNE, XE, XSE, true, true},
    {ynw, yne, YNW, YN, YNE, false, false},
    {xws, xwn, XSW, XW, XNW, false, false},
    {yse, ysw, YSE, YS, YSW, false, false},
};

// Corner passages, one per quadrant role q, ridden counterclockwise around
// the region: enter on the left lane of role q+1, cross the tube in the
// sector between, exit on the left lane of role q.
struct CornerStep { int cell, in_edge, out_edge; };
const CornerStep kCorner[4][3] = {
    {{YW_, ynw, ba1}, {U1_, ba1, ta1}, {XN_, ta1, xen}},
    {{XS_, xws, ta2}, {U2_, ta2, ba2}, {YW_, ba2, ynw}},
    {{YE_, yse, ba3}, {U3_, ba3, ta3}, {XS_, ta3, xws}},
    {{XN_, xen, ta0}, {U0_, ta0, ba0}, {YE_, ba0, yse}},
};

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

const Rat kHalf{1, 2};
const Rat kFirstExit{1, 3};
const Rat kSecondExit{2, 3};
const Rat kWallEps{1, 32};
const Rat kParallelDelta{1, 997};

inline int dart_of(int edge, bool fwd) { return 2 * edge + (fwd ? 0 : 1); }
inline int dart_reverse(int d) { return d ^ 1; }

// Point on the boundary of the unit square at perimeter fraction f in [0,1).
struct Pt2 {
  Rat x, y;
};
Pt2 square_point(Rat f) {
  Rat s = f * Rat(4);
  if (s < Rat(1)) return {s, Rat(0)};
  if (s < Rat(2)) return {Rat(1), s - Rat(1)};
  if (s < Rat(3)) return {Rat(3) - s, Rat(1)};
  return {Rat(0), Rat(4) - s};
}

}  // namespace

struct SurfaceBuilder {
  static CombSurface run(const Divide& d, const std::vector<Region>& regions) {
    CombSurface s;
    s.div_ = d;
    s.regions_ = regions;
    s.d_ = static_cast<int>(d.crossings.size());

    std::map<Dart, int> face_of;
    for (const auto& r : regions)
      for (Dart h : r.cycle) face_of[h] = r.id;

    // Role assignment: role 0 is a dart with the + quadrant on its left.
    s.role_darts_.resize(s.d_);
    for (int ci = 0; ci < s.d_; ++ci) {
      const auto& rot = d.crossings[ci].rot;
      int base = -1;
      for (int i = 0; i < 4 && base < 0; ++i) {
        const Region& q = regions.at(face_of.at(rot[i]));
        if (!q.has_sign) fail("Internal", "region signs required");
        if (q.sign == Sign::Plus) base = i;
      }
      if (base < 0) fail("GluingMismatch", "crossing without a + quadrant");
      for (int i = 0; i < 4; ++i) s.role_darts_[ci][i] = rot[(base + i) % 4];
      for (int i = 0; i < 4; ++i) s.dart_block_role_[s.role_darts_[ci][i]] = {ci, i};
    }

    auto vgid = [&](int blk, int lv) { return blk * kLocalVerts + lv; };
    auto egid = [&](int blk, int le) { return blk * kLocalEdges + le; };

    UnionFind verts(std::max(1, s.d_ * kLocalVerts));
    std::map<int, std::pair<int, bool>> emap;  // gid -> (representative, same dir)

    for (size_t ei = 0; ei < d.edges.size(); ++ei) {
      Dart ha = d.edges[ei].a, hb = d.edges[ei].b;
      if (d.dart_vertex.at(ha) < 0 || d.dart_vertex.at(hb) < 0) continue;  // strand end
      auto [blka, ra] = s.dart_block_role_.at(ha);
      auto [blkb, rb] = s.dart_block_role_.at(hb);
      if ((ra % 2) == (rb % 2))
        fail("GluingMismatch", "edge " + std::to_string(d.edges[ei].id) +
                                   " joins two slots at the same band level");
      const Slot& sa = kSlots[ra];
      const Slot& sb = kSlots[rb];
      // Half-twist gluing: left lane to left lane, right to right.
      auto merge = [&](int ea, bool ala, int eb, bool alb) {
        int ga = egid(blka, ea), gb = egid(blkb, eb);
        bool same_dir = ala == alb;
        emap[std::max(ga, gb)] = {std::min(ga, gb), same_dir};
      };
      merge(sa.left_edge, sa.l_aligned, sb.left_edge, sb.l_aligned);
      merge(sa.right_edge, sa.r_aligned, sb.right_edge, sb.r_aligned);
      verts.unite(vgid(blka, sa.lcorner), vgid(blkb, sb.lcorner));
      verts.unite(vgid(blka, sa.mid), vgid(blkb, sb.mid));
      verts.unite(vgid(blka, sa.rcorner), vgid(blkb, sb.rcorner));
      // Transit parameters: the exit from the lexicographically smaller
      // (block, role) slot crosses the lane first in its reference direction.
      bool a_first = std::make_pair(blka, ra) < std::make_pair(blkb, rb);
      s.transit_param_[ha] = a_first ? kFirstExit : kSecondExit;
      s.transit_param_[hb] = a_first ? kSecondExit : kFirstExit;
    }

    auto resolve = [&](int gid) -> std::pair<int, bool> {
      auto it = emap.find(gid);
      if (it == emap.end()) return {gid, true};
      return it->second;
    };

    std::map<int, int> final_id;
    s.edge_final_.assign(s.d_ * kLocalEdges, -1);
    for (int blk = 0; blk < s.d_; ++blk)
      for (int le = 0; le < kLocalEdges; ++le) {
        int g = egid(blk, le);
        if (resolve(g).first == g && !final_id.count(g))
          final_id[g] = static_cast<int>(final_id.size());
      }
    for (int blk = 0; blk < s.d_; ++blk)
      for (int le = 0; le < kLocalEdges; ++le) {
        int g = egid(blk, le);
        s.edge_final_[g] = final_id.at(resolve(g).first);
      }
    s.edges_.assign(final_id.size(), {});

    std::map<int, int> vfinal;
    auto vid = [&](int blk, int lv) {
      int r = verts.find(vgid(blk, lv));
      auto it = vfinal.find(r);
      if (it != vfinal.end()) return it->second;
      int id = static_cast<int>(vfinal.size());
      vfinal[r] = id;
      return id;
    };
    for (int blk = 0; blk < s.d_; ++blk)
      for (int le = 0; le < kLocalEdges; ++le) {
        auto [rep, same] = resolve(egid(blk, le));
        int fe = final_id.at(rep);
        int from = vid(blk, kEdgeEnds[le].from), to = vid(blk, kEdgeEnds[le].to);
        if (!same) std::swap(from, to);
        if (s.edges_[fe].from < 0) {
          s.edges_[fe].from = from;
          s.edges_[fe].to = to;
        } else if (s.edges_[fe].from != from || s.edges_[fe].to != to) {
          fail("GluingMismatch", "glued slot endpoints disagree");
        }
      }
    s.nverts_ = static_cast<int>(vfinal.size());

    for (int blk = 0; blk < s.d_; ++blk)
      for (int lc = 0; lc < kLocalCells; ++lc) {
        std::vector<std::pair<int, bool>> cyc;
        for (auto [le, fwd] : kCellTable[lc]) {
          auto [rep, same] = resolve(egid(blk, le));
          cyc.push_back({final_id.at(rep), same == fwd});
        }
        s.cells_.push_back(std::move(cyc));
      }
    for (size_t c = 0; c < s.cells_.size(); ++c)
      for (size_t k = 0; k < s.cells_[c].size(); ++k) {
        auto [e, fwd] = s.cells_[c][k];
        s.edges_[e].uses.push_back({static_cast<int>(c), static_cast<int>(k), fwd});
      }
    for (const auto& e : s.edges_) {
      if (e.uses.empty() || e.uses.size() > 2) fail("GluingMismatch", "bad edge use count");
      if (e.uses.size() == 2 && e.uses[0].forward == e.uses[1].forward)
        fail("GluingMismatch", "edge used twice in the same direction");
    }

    for (const auto& [h, br] : s.dart_block_role_) {
      auto [blk, role] = br;
      s.slot_edge_[h] = s.edge_final_[egid(blk, kSlots[role].left_edge)];
    }

    s.trace_boundary();
    return s;
  }
};

CombSurface CombSurface::build(const Divide& d, const std::vector<Region>& regions) {
  return SurfaceBuilder::run(d, regions);
}

int CombSurface::euler_characteristic() const {
  return nverts_ - static_cast<int>(edges_.size()) + static_cast<int>(cells_.size());
}

int CombSurface::genus() const {
  return (2 - boundary_components() - euler_characteristic()) / 2;
}

int CombSurface::edge_final(int blk, int local_edge) const {
  return edge_final_.at(blk * kLocalEdges + local_edge);
}

void CombSurface::trace_boundary() {
  // pred_in_face: for consecutive cell uses (..., a, b, ...), the dart of b
  // is preceded by the dart of a.
  std::map<int, int> pred;
  std::set<int> used;
  for (const auto& cyc : cells_) {
    int n = static_cast<int>(cyc.size());
    for (int k = 0; k < n; ++k) {
      int prev = dart_of(cyc[(k + n - 1) % n].first, cyc[(k + n - 1) % n].second);
      int cur = dart_of(cyc[k].first, cyc[k].second);
      pred[cur] = prev;
      used.insert(cur);
    }
  }
  std::set<int> unseen;
  for (size_t e = 0; e < edges_.size(); ++e) {
    if (!edges_[e].boundary()) continue;
    bool used_fwd = edges_[e].uses[0].forward;
    unseen.insert(dart_of(static_cast<int>(e), !used_fwd));
  }
  boundary_.clear();
  while (!unseen.empty()) {
    int start = *unseen.begin();
    std::vector<int> cyc;
    int cur = start;
    do {
      unseen.erase(cur);
      cyc.push_back(cur);
      int w = dart_reverse(cur);
      while (used.count(w)) w = dart_reverse(pred.at(w));
      cur = w;
    } while (cur != start);
    boundary_.push_back(std::move(cyc));
  }
}

CombSurface::CellPos CombSurface::locate(int cell, const SurfPoint& p) const {
  const auto& cyc = cells_.at(cell);
  for (size_t k = 0; k < cyc.size(); ++k) {
    auto [e, fwd] = cyc[k];
    if (e == p.edge) return {static_cast<int>(k), fwd ? p.t : Rat(1) - p.t};
  }
  fail("Internal", "point not on the cell boundary");
}

int CombSurface::crossing_sign(int cell, const CellPos& ain, const CellPos& aout,
                               const CellPos& bin, const CellPos& bout) const {
  (void)cell;
  auto key = [&](const CellPos& p) -> std::tuple<int, int, Rat> {
    if (p == ain) fail("UnresolvedOverlap", "coincident walk points");
    bool after = ain < p;
    return {after ? 0 : 1, p.pos, p.t};
  };
  auto kb_in = key(bin), ka_out = key(aout), kb_out = key(bout);
  if (kb_in == ka_out || ka_out == kb_out || kb_in == kb_out)
    fail("UnresolvedOverlap", "coincident walk points");
  bool bin_first = kb_in < ka_out;
  bool bout_last = ka_out < kb_out;
  // Cell cycles are taken clockwise with respect to the surface orientation;
  // together with the core directions below this realizes the +1 table.
  if (bin_first && bout_last) return -1;
  if (!bin_first && !bout_last) return 1;
  return 0;
}

int CombSurface::algebraic_intersection(const SurfWalk& a, const SurfWalk& b) const {
  std::map<int, std::vector<int>> cells_a, cells_b;
  for (size_t i = 0; i < a.steps.size(); ++i) cells_a[a.steps[i].cell].push_back(i);
  for (size_t i = 0; i < b.steps.size(); ++i) cells_b[b.steps[i].cell].push_back(i);
  int total = 0;
  for (const auto& [cell, as] : cells_a) {
    auto it = cells_b.find(cell);
    if (it == cells_b.end()) continue;
    for (int ia : as)
      for (int ib : it->second)
        total += crossing_sign(cell, locate(cell, a.steps[ia].in), locate(cell, a.steps[ia].out),
                               locate(cell, b.steps[ib].in), locate(cell, b.steps[ib].out));
  }
  return total;
}

int CombSurface::self_crossing_count(const SurfWalk& w) const {
  int n = static_cast<int>(w.steps.size());
  int count = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (w.steps[i].cell != w.steps[j].cell) continue;
      int cell = w.steps[i].cell;
      int s = crossing_sign(cell, locate(cell, w.steps[i].in), locate(cell, w.steps[i].out),
                            locate(cell, w.steps[j].in), locate(cell, w.steps[j].out));
      if (s != 0) ++count;
    }
  return count;
}

SurfWalk CombSurface::region_walk(int region_id) const {
  const Region& r = regions_.at(region_id);
  if (!r.bounded) fail("OpenRegionWalk", "unbounded region carries no vanishing cycle");
  SurfWalk w;
  int m = static_cast<int>(r.cycle.size());
  for (int k = 0; k < m; ++k) {
    Dart dk = r.cycle[k];
    Dart dn = r.cycle[(k + 1) % m];
    Dart h_in = div_.mate.at(dk);
    Dart h_out = dn;
    int blk = div_.dart_vertex.at(h_in);
    if (blk < 0) fail("OpenRegionWalk", "bounded region walk reaches a strand end");
    if (div_.rot_next.at(h_out) != h_in)
      fail("OpenRegionWalk", "corner darts are not rotation-adjacent");
    auto [blk2, q] = dart_block_role_.at(h_out);
    if (blk2 != blk || role_darts_[blk][(q + 1) % 4] != h_in)
      fail("Internal", "corner role mismatch");
    SurfPoint entry{slot_edge_.at(h_in), transit_param_.at(div_.mate.at(h_in))};
    SurfPoint exit{slot_edge_.at(h_out), transit_param_.at(h_out)};
    for (int t = 0; t < 3; ++t) {
      const CornerStep& cs = kCorner[q][t];
      SurfStep st;
      st.cell = blk * kLocalCells + cs.cell;
      st.in = t == 0 ? entry : SurfPoint{edge_final(blk, cs.in_edge), kHalf};
      st.out = t == 2 ? exit : SurfPoint{edge_final(blk, cs.out_edge), kHalf};
      w.steps.push_back(st);
    }
  }
  return w;
}

std::vector<SurfWalk> CombSurface::vanishing_cycle_walks(const AGammaDiagram& ag) const {
  std::vector<SurfWalk> out(ag.mu());
  for (const auto& v : ag.vertices) {
    if (v.from_crossing) {
      int blk = div_.crossing_index(v.origin);
      SurfWalk w;
      for (int i = 3; i >= 0; --i) {
        SurfStep st;
        st.cell = blk * kLocalCells + U0_ + i;
        st.in = {edge_final(blk, vt0 + (i + 1) % 4), kHalf};
        st.out = {edge_final(blk, vt0 + i), kHalf};
        w.steps.push_back(st);
      }
      out[v.id] = std::move(w);
    } else {
      out[v.id] = region_walk(v.origin);
    }
  }
  return out;
}

// ---------- cutting ----------

CombSurface::CutResult CombSurface::cut_along(const std::vector<SurfStep>& steps) const {
  // Gather arcs per cell.
  std::map<int, std::vector<std::pair<CellPos, int>>> cell_pts;
  std::map<int, std::vector<std::pair<Rat, int>>> edge_cuts;  // edge -> (ref t, arc endpoint tag)
  int arc_id = 0;
  for (const auto& st : steps) {
    cell_pts[st.cell].push_back({locate(st.cell, st.in), arc_id});
    cell_pts[st.cell].push_back({locate(st.cell, st.out), arc_id});
    edge_cuts[st.in.edge].push_back({st.in.t, 0});
    edge_cuts[st.out.edge].push_back({st.out.t, 0});
    ++arc_id;
  }
  // Regions per cell: non-crossing matching on the boundary circle.
  // region key: (cell, region index). Cells untouched by the curve have one region.
  std::map<int, std::vector<std::pair<CellPos, int>>> cell_sorted;  // endpoint -> region after it
  std::map<int, int> cell_regions;
  int total_regions = 0;
  std::map<std::pair<int, int>, int> region_node;  // (cell, region) -> union-find node
  for (auto& [cell, pts] : cell_pts) {
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    int k2 = static_cast<int>(pts.size());
    // Find a rotation where the matching nests properly.
    int rot = -1;
    for (int r = 0; r < k2 && rot < 0; ++r) {
      std::vector<int> stack;
      bool ok = true;
      std::set<int> open;
      for (int i = 0; i < k2 && ok; ++i) {
        int arc = pts[(r + i) % k2].second;
        if (!open.count(arc)) {
          open.insert(arc);
          stack.push_back(arc);
        } else if (!stack.empty() && stack.back() == arc) {
          stack.pop_back();
        } else {
          ok = false;
        }
      }
      if (ok && stack.empty()) rot = r;
    }
    if (rot < 0) fail("NotSimple", "cell passages cross each other");
    // Assign region ids to the segments after each endpoint (rotated order).
    std::vector<int> region_after(k2);
    std::vector<int> stack{0};
    int next_region = 1;
    std::set<int> open;
    for (int i = 0; i < k2; ++i) {
      int arc = pts[(rot + i) % k2].second;
      if (!open.count(arc)) {
        open.insert(arc);
        stack.push_back(next_region++);
      } else {
        stack.pop_back();
      }
      region_after[(rot + i) % k2] = stack.back();
    }
    cell_sorted[cell] = pts;
    for (int i = 0; i < k2; ++i)
      cell_sorted[cell][i].second = region_after[i];  // repurpose: region after endpoint i
    cell_regions[cell] = next_region;
    for (int rgn = 0; rgn < next_region; ++rgn)
      region_node[{cell, rgn}] = total_regions++;
  }
  for (size_t c = 0; c < cells_.size(); ++c)
    if (!cell_pts.count(static_cast<int>(c))) {
      cell_regions[static_cast<int>(c)] = 1;
      region_node[{static_cast<int>(c), 0}] = total_regions++;
    }

  auto region_at = [&](int cell, const CellPos& p) -> int {
    auto it = cell_sorted.find(cell);
    if (it == cell_sorted.end()) return region_node.at({cell, 0});
    const auto& pts = it->second;
    // Region after the last endpoint <= p (cyclically); if p precedes all,
    // it lies after the last endpoint.
    int best = -1;
    for (size_t i = 0; i < pts.size(); ++i)
      if (pts[i].first < p) best = static_cast<int>(i);
    if (best < 0) best = static_cast<int>(pts.size()) - 1;
    return region_node.at({cell, pts[best].second});
  };

  UnionFind uf(total_regions);
  for (size_t e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.boundary()) continue;
    std::vector<Rat> cuts;
    auto it = edge_cuts.find(static_cast<int>(e));
    if (it != edge_cuts.end())
      for (auto& [t, tag] : it->second) cuts.push_back(t);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    // Interval midpoints between consecutive cut points (and the ends).
    std::vector<Rat> mids;
    Rat lo(0);
    for (const Rat& c : cuts) {
      mids.push_back((lo + c) / Rat(2));
      lo = c;
    }
    mids.push_back((lo + Rat(1)) / Rat(2));
    for (const Rat& m : mids) {
      SurfPoint p{static_cast<int>(e), m};
      int ra = region_at(ed.uses[0].cell, locate(ed.uses[0].cell, p));
      int rb = region_at(ed.uses[1].cell, locate(ed.uses[1].cell, p));
      uf.unite(ra, rb);
    }
  }
  std::set<int> roots;
  for (int i = 0; i < total_regions; ++i) roots.insert(uf.find(i));
  CutResult res;
  res.components = static_cast<int>(roots.size());
  res.separating = res.components == 2;
  return res;
}

// ---------- smoothing ----------

CombSurface::SmoothResult CombSurface::smooth_all_crossings(
    const std::vector<SurfWalk>& curves) const {
  struct Flat {
    int walk, step;
  };
  std::vector<std::vector<SurfStep>> w;
  for (const auto& c : curves) w.push_back(c.steps);
  std::map<int, std::vector<Flat>> by_cell;
  for (size_t wi = 0; wi < w.size(); ++wi)
    for (size_t si = 0; si < w[wi].size(); ++si)
      by_cell[w[wi][si].cell].push_back({static_cast<int>(wi), static_cast<int>(si)});

  // Chord geometry on the square model for exact crossing parameters.
  auto chord_pt = [&](int cell, const SurfPoint& p) {
    CellPos cp = locate(cell, p);
    int n = static_cast<int>(cells_[cell].size());
    Rat f = (Rat(cp.pos) + cp.t) / Rat(n);
    return square_point(f);
  };

  struct Crossing {
    Flat a, b;
    Rat sa, sb;  // parameters along the two chords
  };
  std::vector<Crossing> crossings;
  auto adjacent = [&](const Flat& x, const Flat& y) {
    if (x.walk != y.walk) return false;
    int n = static_cast<int>(w[x.walk].size());
    int d = std::abs(x.step - y.step);
    return d == 1 || d == n - 1;
  };
  for (const auto& [cell, list] : by_cell) {
    for (size_t i = 0; i < list.size(); ++i)
      for (size_t j = i + 1; j < list.size(); ++j) {
        const Flat &fa = list[i], &fb = list[j];
        if (fa.walk == fb.walk && fa.step == fb.step) continue;
        if (adjacent(fa, fb)) continue;
        const SurfStep& sa = w[fa.walk][fa.step];
        const SurfStep& sb = w[fb.walk][fb.step];
        int sgn = crossing_sign(cell, locate(cell, sa.in), locate(cell, sa.out),
                                locate(cell, sb.in), locate(cell, sb.out));
        if (sgn == 0) continue;
        Pt2 A = chord_pt(cell, sa.in), B = chord_pt(cell, sa.out);
        Pt2 C = chord_pt(cell, sb.in), D = chord_pt(cell, sb.out);
        Rat denom = (B.x - A.x) * (D.y - C.y) - (B.y - A.y) * (D.x - C.x);
        if (denom.sign() == 0) fail("Internal", "degenerate chord pair");
        Rat s = ((C.x - A.x) * (D.y - C.y) - (C.y - A.y) * (D.x - C.x)) / denom;
        Rat u = ((C.x - A.x) * (B.y - A.y) - (C.y - A.y) * (B.x - A.x)) / denom;
        crossings.push_back({fa, fb, s, u});
      }
  }

  // Pieces: step s is cut at its crossing parameters.
  auto flat_index = [&](const Flat& f) {
    int idx = 0;
    for (int k = 0; k < f.walk; ++k) idx += static_cast<int>(w[k].size());
    return idx + f.step;
  };
  int nflat = 0;
  for (const auto& ws : w) nflat += static_cast<int>(ws.size());
  std::vector<std::vector<std::pair<Rat, int>>> cuts(nflat);  // (s, crossing id)
  for (size_t c = 0; c < crossings.size(); ++c) {
    cuts[flat_index(crossings[c].a)].push_back({crossings[c].sa, static_cast<int>(c)});
    cuts[flat_index(crossings[c].b)].push_back({crossings[c].sb, static_cast<int>(c)});
  }
  for (auto& v : cuts)
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  // Piece id: (flat step, k) with k = 0..#cuts. Successor:
  //  - piece ending at crossing c continues as the partner's next piece;
  //  - last piece continues with the next step's first piece.
  auto piece_id = [&](int flat, int k) {
    return std::make_pair(flat, k);
  };
  std::map<std::pair<int, int>, std::pair<int, int>> succ;
  std::vector<int> walk_of_flat(nflat), step_of_flat(nflat);
  {
    int idx = 0;
    for (size_t wi = 0; wi < w.size(); ++wi)
      for (size_t si = 0; si < w[wi].size(); ++si) {
        walk_of_flat[idx] = static_cast<int>(wi);
        step_of_flat[idx] = static_cast<int>(si);
        ++idx;
      }
  }
  auto crossing_rank = [&](int flat, int cid) {
    const auto& v = cuts[flat];
    for (size_t k = 0; k < v.size(); ++k)
      if (v[k].second == cid) return static_cast<int>(k);
    fail("Internal", "crossing not found on step");
  };
  for (int flat = 0; flat < nflat; ++flat) {
    int m = static_cast<int>(cuts[flat].size());
    for (int k = 0; k < m; ++k) {
      int cid = cuts[flat][k].second;
      const Crossing& cr = crossings[cid];
      int aflat = flat_index(cr.a), bflat = flat_index(cr.b);
      int partner = flat == aflat ? bflat : aflat;
      succ[piece_id(flat, k)] = piece_id(partner, crossing_rank(partner, cid) + 1);
    }
    int wi = walk_of_flat[flat], si = step_of_flat[flat];
    int next_flat = flat - si + (si + 1) % static_cast<int>(w[wi].size());
    succ[piece_id(flat, m)] = piece_id(next_flat, 0);
  }

  SmoothResult out;
  out.crossings_resolved = static_cast<int>(crossings.size());
  std::set<std::pair<int, int>> seen;
  std::map<std::pair<int, int>, int> piece_comp;
  for (int flat = 0; flat < nflat; ++flat) {
    for (int k = 0; k <= static_cast<int>(cuts[flat].size()); ++k) {
      auto start = piece_id(flat, k);
      if (seen.count(start)) continue;
      int comp = static_cast<int>(out.walks.size());
      // Collect the cycle; group runs within a cell into collapsed steps.
      std::vector<std::pair<int, int>> cycle;
      auto cur = start;
      do {
        seen.insert(cur);
        piece_comp[cur] = comp;
        cycle.push_back(cur);
        cur = succ.at(cur);
      } while (cur != start);
      // Rotate so the cycle starts at a step-entry piece (k == 0).
      size_t s0 = 0;
      while (s0 < cycle.size() && cycle[s0].second != 0) ++s0;
      if (s0 == cycle.size()) fail("Internal", "component never crosses a cell edge");
      std::rotate(cycle.begin(), cycle.begin() + s0, cycle.end());
      std::vector<SurfStep> steps;
      SurfStep current;
      for (size_t i = 0; i < cycle.size(); ++i) {
        auto [flat2, k2] = cycle[i];
        const SurfStep& orig = w[walk_of_flat[flat2]][step_of_flat[flat2]];
        if (k2 == 0) {
          if (i > 0) steps.push_back(current);
          current = SurfStep{orig.cell, orig.in, orig.out};
        }
        // The piece ends either at a crossing (stay in the cell) or at the
        // step exit; the collapsed step always ends at the exit of the piece
        // that reaches the cell boundary.
        if (k2 == static_cast<int>(cuts[flat2].size())) current.out = orig.out;
      }
      steps.push_back(current);
      out.walks.push_back(std::move(steps));
    }
  }
  out.components = static_cast<int>(out.walks.size());
  // Stash piece data for intersection attribution.
  piece_comp_.clear();
  for (const auto& [pid, comp] : piece_comp) piece_comp_[pid] = comp;
  step_cuts_ = cuts;
  return out;
}

std::vector<int> CombSurface::component_intersections(const std::vector<SurfWalk>& curves,
                                                      const SmoothResult& sm,
                                                      const SurfWalk& probe) const {
  // Uses the piece data stashed by the preceding smooth_all_crossings call.
  std::vector<int> tallies(sm.components, 0);
  std::vector<const SurfStep*> flat_steps;
  std::vector<int> flat_walk;
  for (size_t wi = 0; wi < curves.size(); ++wi)
    for (const auto& st : curves[wi].steps) {
      flat_steps.push_back(&st);
      flat_walk.push_back(static_cast<int>(wi));
    }
  auto chord_pt = [&](int cell, const SurfPoint& p) {
    CellPos cp = locate(cell, p);
    int n = static_cast<int>(cells_[cell].size());
    Rat f = (Rat(cp.pos) + cp.t) / Rat(n);
    return square_point(f);
  };
  for (size_t flat = 0; flat < flat_steps.size(); ++flat) {
    const SurfStep& sa = *flat_steps[flat];
    for (const auto& sb : probe.steps) {
      if (sa.cell != sb.cell) continue;
      int sgn = crossing_sign(sa.cell, locate(sa.cell, sa.in), locate(sa.cell, sa.out),
                              locate(sa.cell, sb.in), locate(sa.cell, sb.out));
      if (sgn == 0) continue;
      Pt2 A = chord_pt(sa.cell, sa.in), B = chord_pt(sa.cell, sa.out);
      Pt2 C = chord_pt(sa.cell, sb.in), D = chord_pt(sa.cell, sb.out);
      Rat denom = (B.x - A.x) * (D.y - C.y) - (B.y - A.y) * (D.x - C.x);
      Rat s = ((C.x - A.x) * (D.y - C.y) - (C.y - A.y) * (D.x - C.x)) / denom;
      // Which piece of this step contains parameter s?
      const auto& mycuts = step_cuts_.at(flat);
      int k = 0;
      while (k < static_cast<int>(mycuts.size()) && mycuts[k].first < s) ++k;
      int comp = piece_comp_.at({static_cast<int>(flat), k});
      tallies[comp] += sgn;
    }
  }
  return tallies;
}

SurfWalk CombSurface::parallel_copy(const SurfWalk& w) const {
  SurfWalk out = w;
  int n = static_cast<int>(w.steps.size());
  for (int i = 0; i < n; ++i) {
    const SurfStep& st = w.steps[i];
    // Shift the transit point at this step's exit to the walk's left:
    // along the cell-use direction of the exit edge in the exiting cell.
    const auto& cyc = cells_.at(st.cell);
    bool fwd = false;
    bool found = false;
    for (const auto& [e, f] : cyc)
      if (e == st.out.edge) {
        fwd = f;
        found = true;
        break;
      }
    if (!found) fail("Internal", "exit edge not in cell");
    Rat t2 = fwd ? st.out.t + kParallelDelta : st.out.t - kParallelDelta;
    if (t2 <= Rat(0) || t2 >= Rat(1)) fail("Internal", "parallel offset leaves the edge");
    out.steps[i].out.t = t2;
    out.steps[(i + 1) % n].in.t = t2;
  }
  return out;
}

SurfWalk CombSurface::boundary_parallel(int k) const {
  const auto& cyc = boundary_.at(k);
  if (cyc.empty()) fail("Internal", "empty boundary cycle");
  // Start from the cell use of the first boundary edge.
  int e0 = cyc[0] / 2;
  const EdgeUse& u0 = edges_[e0].uses[0];
  struct State {
    int cell, pos;
    bool operator==(const State& o) const { return cell == o.cell && pos == o.pos; }
  };
  auto advance = [&](State s) -> std::tuple<State, SurfPoint> {
    const auto& cc = cells_.at(s.cell);
    int n = static_cast<int>(cc.size());
    for (int step = 1; step <= n; ++step) {
      int j = (s.pos + step) % n;
      auto [e, fwd] = cc[j];
      if (edges_[e].boundary()) continue;
      Rat t = fwd ? kWallEps : Rat(1) - kWallEps;
      SurfPoint p{e, t};
      // Enter the neighbouring cell through this edge.
      const auto& uses = edges_[e].uses;
      const EdgeUse& other = uses[0].cell == s.cell && uses[0].pos == j ? uses[1] : uses[0];
      return {State{other.cell, other.pos}, p};
    }
    fail("Internal", "cell with no internal edge");
  };
  State start{u0.cell, u0.pos};
  auto [s1, p1] = advance(start);
  std::vector<std::pair<State, SurfPoint>> tour;  // state entered, entry point
  State s = s1;
  SurfPoint entry = p1;
  do {
    auto [ns, q] = advance(s);
    tour.push_back({s, entry});
    tour.back().second = entry;
    // Record exit later via the next entry point.
    entry = q;
    s = ns;
  } while (!(s == s1));
  SurfWalk w;
  int m = static_cast<int>(tour.size());
  for (int i = 0; i < m; ++i) {
    SurfStep st;
    st.cell = tour[i].first.cell;
    st.in = tour[i].second;
    st.out = tour[(i + 1) % m].second;
    w.steps.push_back(st);
  }
  return w;
}

std::string CombSurface::gluing_graph_dot(const Divide& d) const {
  std::ostringstream os;
  os << "graph blocks {\n";
  for (size_t i = 0; i < d.crossings.size(); ++i)
    os << "  b" << i << " [label=\"F" << d.crossings[i].id << "\"];\n";
  for (const auto& e : d.edges) {
    int va = d.dart_vertex.at(e.a), vb = d.dart_vertex.at(e.b);
    if (va >= 0 && vb >= 0) os << "  b" << va << " -- b" << vb << ";\n";
  }
  os << "}\n";
  return os.str();
}

SurfaceReport surface_report(const Divide& d, const std::vector<Region>& regions,
                             const AGammaDiagram& ag) {
  SurfaceReport rep;
  CombSurface s = CombSurface::build(d, regions);
  rep.chi = s.euler_characteristic();
  rep.genus = s.genus();
  rep.boundary = s.boundary_components();
  auto walks = s.vanishing_cycle_walks(ag);
  int n = ag.mu();
  rep.walk_intersections = IntMat(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) rep.walk_intersections(i, j) = s.algebraic_intersection(walks[i], walks[j]);
  for (int i = 0; i < n; ++i) {
    auto cut = s.cut_along(walks[i]);
    rep.non_separating.push_back(cut.components == 1);
  }
  return rep;
}

}  // namespace dividekit
