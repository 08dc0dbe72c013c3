#pragma once

#include <map>
#include <string>
#include <vector>

#include "dividekit/divide.hpp"
#include "dividekit/util.hpp"

namespace dividekit {

// A point on the 1-skeleton of the cell surface: interior point of an edge,
// at exact parameter t in the edge's reference direction.
struct SurfPoint {
  int edge = -1;
  Rat t;
  bool operator==(const SurfPoint& o) const { return edge == o.edge && t == o.t; }
};

// A passage through one 2-cell, entering at `in` and leaving at `out`.
// The passage is a simple arc; all passages of one multicurve through a cell
// are pairwise disjoint.
struct SurfStep {
  int cell = -1;
  SurfPoint in, out;
};

struct SurfWalk {
  std::vector<SurfStep> steps;  // cyclic
};

// Milnor-fiber model built from one standard block per crossing (two crossing
// bands joined by a tube) glued along the divide's internal edges with the
// orientation-matching half twist. Cells are disks; every edge is used by at
// most two cells with opposite directions, so the complex is oriented.
class CombSurface {
 public:
  struct EdgeUse {
    int cell = -1;
    int pos = -1;       // index in the cell's cycle
    bool forward = true;
  };
  struct Edge {
    int from = -1, to = -1;  // global vertex ids
    std::vector<EdgeUse> uses;
    bool boundary() const { return uses.size() == 1; }
  };

  static CombSurface build(const Divide& d, const std::vector<Region>& regions);

  int block_count() const { return d_; }
  int vertex_count() const { return nverts_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int cell_count() const { return static_cast<int>(cells_.size()); }
  int euler_characteristic() const;
  int boundary_components() const { return static_cast<int>(boundary_.size()); }
  int genus() const;

  // Closed walks for the basis cycles, one per diagram vertex, in basis order.
  std::vector<SurfWalk> vanishing_cycle_walks(const AGammaDiagram& ag) const;

  // Signed crossing count of two transverse walks.
  int algebraic_intersection(const SurfWalk& a, const SurfWalk& b) const;
  // Self-crossings of one walk (non-adjacent step pairs).
  int self_crossing_count(const SurfWalk& w) const;

  struct CutResult {
    int components = 0;
    bool separating = false;
  };
  // Components of the complement of a simple closed walk (or disjoint union
  // of walks given as one step list).
  CutResult cut_along(const std::vector<SurfStep>& steps) const;
  CutResult cut_along(const SurfWalk& w) const { return cut_along(w.steps); }

  struct SmoothResult {
    int components = 0;
    std::vector<std::vector<SurfStep>> walks;  // collapsed cell passages
    int crossings_resolved = 0;
  };
  // Oriented smoothing of every crossing (mutual and self) of the collection.
  SmoothResult smooth_all_crossings(const std::vector<SurfWalk>& curves) const;

  // Crossings of the collection's arcs with a probe walk, attributed to the
  // smoothed components: entry k = signed count for component k.
  std::vector<int> component_intersections(const std::vector<SurfWalk>& curves,
                                           const SmoothResult& sm,
                                           const SurfWalk& probe) const;

  // Nowhere-crossing translate on the left of the walk.
  SurfWalk parallel_copy(const SurfWalk& w) const;

  // Closed walk just inside boundary component k.
  SurfWalk boundary_parallel(int k) const;

  std::string gluing_graph_dot(const Divide& d) const;

 private:
  int d_ = 0;
  int nverts_ = 0;
  Divide div_;
  std::vector<Region> regions_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, bool>>> cells_;  // (edge, forward) cycles
  std::vector<std::vector<int>> boundary_;                // cycles of unused darts
  // Block data: divide darts in role order (role 0 = upper band, + quadrant
  // on its left), and the transit parameter for each glued slot.
  std::vector<std::array<Dart, 4>> role_darts_;
  std::map<Dart, Rat> transit_param_;  // divide dart -> crossing parameter on its slot edge
  std::map<Dart, int> slot_edge_;      // divide dart -> global edge of the slot's left lane
  std::map<Dart, std::pair<int, int>> dart_block_role_;
  std::vector<int> edge_final_;  // block-local edge gid -> final edge id
  // Piece bookkeeping from the last smoothing, for crossing attribution.
  mutable std::map<std::pair<int, int>, int> piece_comp_;
  mutable std::vector<std::vector<std::pair<Rat, int>>> step_cuts_;

  friend struct SurfaceBuilder;

  int edge_final(int blk, int local_edge) const;
  SurfWalk region_walk(int region_id) const;
  void trace_boundary();

  struct ChordRef {
    int walk = -1, step = -1;
  };
  struct CellPos {
    int pos;
    Rat t;  // parameter in the use direction
    bool operator<(const CellPos& o) const {
      return pos != o.pos ? pos < o.pos : t < o.t;
    }
    bool operator==(const CellPos& o) const { return pos == o.pos && t == o.t; }
  };
  CellPos locate(int cell, const SurfPoint& p) const;
  int crossing_sign(int cell, const CellPos& ain, const CellPos& aout, const CellPos& bin,
                    const CellPos& bout) const;
};

struct SurfaceReport {
  int chi = 0, genus = 0, boundary = 0;
  IntMat walk_intersections;
  std::vector<bool> non_separating;  // per basis walk
};

SurfaceReport surface_report(const Divide& d, const std::vector<Region>& regions,
                             const AGammaDiagram& ag);

}  // namespace dividekit
