#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dividekit/util.hpp"

namespace dividekit {

struct Vec2 {
  double x = 0, y = 0;
  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double norm() const;
};
double dot(Vec2 a, Vec2 b);
double det(Vec2 a, Vec2 b);

// One C1 piece: sampled points with tangent samples.
struct CurveSegment {
  std::vector<Vec2> points;
  std::vector<Vec2> tangents;  // same length, nonzero
};

struct PiecewiseCurve {
  std::vector<CurveSegment> segments;
  bool closed = true;
};

PiecewiseCurve parse_curve(const std::string& json_text);
PiecewiseCurve reversed(const PiecewiseCurve& c);

struct PlanarField {
  std::string name;
  std::function<Vec2(Vec2)> eval;
};

// Named fields: "constant:a,b", "rotational", "hamiltonian:<polynomial in x,y>".
PlanarField make_field(const std::string& spec);
// Sampled grid with bilinear interpolation.
PlanarField grid_field(const std::string& json_text);

struct WindingOptions {
  double max_step = 1.5;          // largest tolerated angle increment, radians
  double parallel_tol = 1e-7;     // |sin| below which vectors count as aligned
  double corner_offset = 1e-3;    // fraction of segment length for the chord
};

// Total turning of the curve's tangent against the field, in full turns.
// Corner contributions use the principal angle; anti-parallel corners are
// resolved by the chord rule below.
double winding_number(const PiecewiseCurve& c, const PlanarField& f,
                      const WindingOptions& opts = {});

// Sign rule for an anti-parallel corner: +pi when the interpolating chord and
// the field at the corner form a positive basis, -pi otherwise.
double corner_sign(Vec2 u, Vec2 v, Vec2 field_at_corner, Vec2 chord,
                   double parallel_tol = 1e-7);

struct SurgerySum {
  double sum = 0;
  bool zero = false;  // |sum| below tolerance
};
SurgerySum surgery_winding_sum(const std::vector<PiecewiseCurve>& curves, const PlanarField& f,
                               double tol = 1e-6, const WindingOptions& opts = {});

struct CoherenceCheck {
  long long chi = 0;
  long long sum = 0;
  bool ok = false;
};
// Verifies sum of boundary winding numbers = chi of the subsurface.
CoherenceCheck coherence_check(long long chi, const std::vector<long long>& windings);
// Solves for one unknown entry so the sum matches chi.
long long coherence_solve(long long chi, const std::vector<long long>& known);

// Test-curve builders.
PiecewiseCurve circle_curve(double radius, int samples, bool counterclockwise = true,
                            Vec2 center = {0, 0});
PiecewiseCurve square_curve(double half_side, int samples_per_side);
// Arc of a circle between two angles (one C1 segment).
CurveSegment arc_segment(Vec2 center, double radius, double a0, double a1, int samples);

}  // namespace dividekit
