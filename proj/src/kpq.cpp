#include "dividekit/kpq.hpp"

#include <numeric>
#include <sstream>

namespace dividekit {

namespace {

// Edge (i, j) joins top point i to bottom point j; id = i*q + j.
// Darts: 2e at the top end, 2e+1 at the bottom end.
struct Rotations {
  int p, q;
  int next(int dart) const {  // ccw-next at the dart's vertex
    int e = dart / 2;
    int i = e / q, j = e % q;
    if (dart % 2 == 0) {
      // Top vertex i: ccw order by ascending j.
      int nj = (j + 1) % q;
      return 2 * (i * q + nj);
    }
    // Bottom vertex j: ccw order by descending i.
    int ni = (i + p - 1) % p;
    return 2 * (ni * q + j) + 1;
  }
  int prev(int dart) const {
    int e = dart / 2;
    int i = e / q, j = e % q;
    if (dart % 2 == 0) {
      int pj = (j + q - 1) % q;
      return 2 * (i * q + pj);
    }
    int pi = (i + 1) % p;
    return 2 * (pi * q + j) + 1;
  }
  int mate(int dart) const { return dart ^ 1; }
};

}  // namespace

KpqModel KpqModel::build(int p, int q) {
  if (p < 1 || q < 1 || std::gcd(p, q) != 1)
    fail("NotCoprime", std::to_string(p) + "," + std::to_string(q));
  KpqModel m = build_relaxed(p, q);
  if (m.boundary_components() != 1) fail("Internal", "coprime spine with several boundaries");
  return m;
}

KpqModel KpqModel::build_relaxed(int p, int q) {
  if (p < 1 || q < 1) fail("NotCoprime", "sides must be positive");
  KpqModel m;
  m.p_ = p;
  m.q_ = q;
  Rotations rot{p, q};
  int ndarts = 2 * p * q;
  m.side_pos_.assign(ndarts, -1);
  m.side_cycle_.assign(ndarts, -1);
  std::vector<bool> seen(ndarts, false);
  for (int d0 = 0; d0 < ndarts; ++d0) {
    if (seen[d0]) continue;
    std::vector<int> cyc;
    int d = d0;
    do {
      seen[d] = true;
      m.side_pos_[d] = static_cast<int>(cyc.size());
      m.side_cycle_[d] = static_cast<int>(m.boundary_.size());
      cyc.push_back(d);
      d = rot.prev(rot.mate(d));
    } while (d != d0);
    m.boundary_.push_back(std::move(cyc));
  }
  return m;
}

int KpqModel::boundary_sides() const {
  int s = 0;
  for (const auto& c : boundary_) s += static_cast<int>(c.size());
  return s;
}

int KpqModel::betti() const { return edge_count() - vertex_count() + 1; }

int KpqModel::genus() const {
  // chi = 2 - 2g - b for the thickened spine.
  return (2 - boundary_components() - euler_characteristic()) / 2;
}

Rat KpqModel::glue(const Rat& theta) const {
  if (boundary_.size() != 1) fail("Internal", "gluing needs a single boundary circle");
  const auto& cyc = boundary_[0];
  int n = static_cast<int>(cyc.size());
  // Normalize into [0, n/2).
  Rat len(n, 2);
  Rat t = theta;
  while (t < Rat(0)) t = t + len;
  while (t >= len) t = t - len;
  Rat twice = t * Rat(2);
  if (twice.den == 1) fail("PointAtVertex", "half-integer coordinate");
  std::int64_t k = twice.num / twice.den;  // floor for positive values
  Rat u = t - Rat(k, 2);                   // offset into side k, in (0, 1/2)
  int dart = cyc[k];
  int other = dart ^ 1;
  int kp = side_pos_[other];
  return Rat(kp, 2) + (Rat(1, 2) - u);
}

bool KpqModel::gluing_equivariant() const {
  const Rat offsets[2] = {Rat(1, 8), Rat(3, 8)};
  int n = boundary_sides();
  Rat len(n, 2);
  for (int k = 0; k < n; ++k) {
    for (const Rat& u : offsets) {
      Rat theta = Rat(k, 2) + u;
      Rat lhs = glue(theta + Rat(1));
      Rat rhs = glue(theta) + Rat(1);
      while (rhs >= len) rhs = rhs - len;
      while (lhs >= len) lhs = lhs - len;
      if (lhs != rhs) return false;
    }
  }
  return true;
}

KpqModel::VariationArc KpqModel::variation_arc(int edge, const Rat& t) const {
  if (t <= Rat(0) || t >= Rat(1)) fail("PointAtVertex", "interior parameter required");
  if (boundary_.size() != 1) fail("Internal", "needs a single boundary circle");
  VariationArc out;
  Rat x = t / Rat(2);  // metric offset from the top end
  int ka = side_pos_[2 * edge];
  int kb = side_pos_[2 * edge + 1];
  out.theta_a = Rat(ka, 2) + x;
  out.theta_b = Rat(kb, 2) + (Rat(1, 2) - x);
  if (glue(out.theta_a) != out.theta_b) fail("Internal", "preimages do not match");

  const auto& cyc = boundary_[0];
  int n = static_cast<int>(cyc.size());
  Rat len(n, 2);
  // The image closes up iff the unit shift keeps the pair glued.
  Rat sa = out.theta_a + Rat(1);
  while (sa >= len) sa = sa - len;
  Rat sb = out.theta_b + Rat(1);
  while (sb >= len) sb = sb - len;
  out.closes = glue(sa) == sb;

  // Simplicity: neither preimage lies inside the other's shifted interval.
  auto inside = [&](Rat a, Rat lo) {
    Rat d = a - lo;
    while (d < Rat(0)) d = d + len;
    while (d >= len) d = d - len;
    return d > Rat(0) && d < Rat(1);
  };
  out.simple = !inside(out.theta_b, out.theta_a) && !inside(out.theta_a, out.theta_b);

  // Net class on the spine: the arc [theta_a, theta_a+1] taken forward and
  // [theta_b, theta_b+1] backward, with fractional end pieces combining at
  // the two closure points.
  std::vector<Rat> frac(edge_count(), Rat(0));
  auto add_interval = [&](Rat start, int dir) {
    // Walk one unit of boundary length from `start`, weighting each covered
    // side piece by dir and by the side's own direction along its edge.
    Rat remaining(1);
    Rat pos = start;
    while (remaining > Rat(0)) {
      while (pos >= len) pos = pos - len;
      Rat twice = pos * Rat(2);
      std::int64_t k = twice.num / twice.den;
      Rat off = pos - Rat(k, 2);
      Rat room = Rat(1, 2) - off;
      Rat eat = room < remaining ? room : remaining;
      int dart = cyc[k];
      int e = dart / 2;
      int edge_dir = dart % 2 == 0 ? 1 : -1;  // top-end side runs top->bottom
      frac[e] = frac[e] + Rat(dir * edge_dir) * eat * Rat(2);
      pos = pos + eat;
      remaining = remaining - eat;
    }
  };
  add_interval(out.theta_a, +1);
  add_interval(out.theta_b, -1);
  out.edge_class.assign(edge_count(), 0);
  for (int e = 0; e < edge_count(); ++e) {
    if (frac[e].den != 1) fail("Internal", "fractional class multiplicity");
    out.edge_class[e] = frac[e].num;
  }
  // Cycle condition at every vertex.
  for (int i = 0; i < p_; ++i) {
    std::int64_t flow = 0;
    for (int j = 0; j < q_; ++j) flow += out.edge_class[i * q_ + j];
    if (flow != 0) fail("Internal", "class is not a cycle at a top vertex");
  }
  for (int j = 0; j < q_; ++j) {
    std::int64_t flow = 0;
    for (int i = 0; i < p_; ++i) flow += out.edge_class[i * q_ + j];
    if (flow != 0) fail("Internal", "class is not a cycle at a bottom vertex");
  }
  std::int64_t g = 0;
  for (auto v : out.edge_class) g = std::gcd(g, v < 0 ? -v : v);
  out.class_nonzero = g != 0;
  out.class_primitive = g == 1;
  return out;
}

std::string KpqModel::report_text() const {
  std::ostringstream os;
  os << "spine K_{" << p_ << "," << q_ << "}\n";
  os << "vertices = " << vertex_count() << ", edges = " << edge_count() << "\n";
  os << "euler characteristic = " << euler_characteristic() << "\n";
  os << "boundary components = " << boundary_components() << "\n";
  os << "boundary length = " << boundary_sides() << " half-edge sides = " << boundary_sides() / 2
     << " metric units\n";
  os << "first betti number = " << betti() << "\n";
  os << "genus = " << genus() << "\n";
  os << "gluing equivariant under unit shift: " << (gluing_equivariant() ? "yes" : "no") << "\n";
  return os.str();
}

}  // namespace dividekit
