#pragma once

#include <string>
#include <vector>

#include "dividekit/util.hpp"

namespace dividekit {

// Bipartite ribbon spine of the y^p + x^q fiber: p top points, q bottom
// points, one edge per pair, rotations from the two-parallel-lines drawing.
// The boundary of the thickened graph carries the metric with every edge
// side of length 1/2; for coprime p, q it is a single circle of length pq.
class KpqModel {
 public:
  static KpqModel build(int p, int q);           // requires gcd(p, q) = 1
  static KpqModel build_relaxed(int p, int q);   // any p, q >= 1

  int p() const { return p_; }
  int q() const { return q_; }
  int edge_count() const { return p_ * q_; }
  int vertex_count() const { return p_ + q_; }
  int boundary_components() const { return static_cast<int>(boundary_.size()); }
  int boundary_sides() const;         // 2pq when connected
  int betti() const;                  // (p-1)(q-1) when coprime
  int genus() const;
  int euler_characteristic() const { return vertex_count() - edge_count(); }

  // Gluing involution on the boundary circle R/(pq)Z. theta must avoid the
  // half-integer grid (vertex points).
  Rat glue(const Rat& theta) const;

  // The boundary self-map induced by the monodromy at level t: theta + (1-t).
  static Rat monodromy_shift(const Rat& theta, const Rat& t) { return theta + (Rat(1) - t); }

  // Exact check of shift-equivariance of the gluing on an interior sample grid.
  bool gluing_equivariant() const;

  struct VariationArc {
    bool closes = false;
    bool simple = false;
    bool class_nonzero = false;
    bool class_primitive = false;
    std::vector<std::int64_t> edge_class;  // net multiplicity per edge
    Rat theta_a, theta_b;
  };
  // The arc through the interior point of edge e at fraction t in (0, 1):
  // its variation image projected to the spine.
  VariationArc variation_arc(int edge, const Rat& t) const;

  std::string report_text() const;

 private:
  int p_ = 0, q_ = 0;
  std::vector<std::vector<int>> boundary_;  // cycles of darts
  std::vector<int> side_pos_;               // dart -> position in its cycle
  std::vector<int> side_cycle_;             // dart -> cycle index
};

}  // namespace dividekit
