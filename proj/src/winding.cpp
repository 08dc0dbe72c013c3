#include "dividekit/winding.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace dividekit {

double Vec2::norm() const { return std::sqrt(x * x + y * y); }
double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double det(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

namespace {

constexpr double kPi = 3.14159265358979323846;

double principal(double a) {
  while (a > kPi) a -= 2 * kPi;
  while (a <= -kPi) a += 2 * kPi;
  return a;
}

// Signed angle from a to b, in (-pi, pi].
double ang(Vec2 a, Vec2 b) { return std::atan2(det(a, b), dot(a, b)); }

}  // namespace

PiecewiseCurve parse_curve(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail("ParseError", e.what());
  }
  PiecewiseCurve c;
  c.closed = j.value("closed", true);
  for (const auto& s : j.at("segments")) {
    CurveSegment seg;
    for (const auto& p : s.at("samples")) seg.points.push_back({p.at(0), p.at(1)});
    for (const auto& t : s.at("tangents")) seg.tangents.push_back({t.at(0), t.at(1)});
    if (seg.points.size() != seg.tangents.size() || seg.points.size() < 2)
      fail("ParseError", "segment needs matching samples and tangents");
    c.segments.push_back(std::move(seg));
  }
  if (c.segments.empty()) fail("ParseError", "curve has no segments");
  return c;
}

PiecewiseCurve reversed(const PiecewiseCurve& c) {
  PiecewiseCurve r;
  r.closed = c.closed;
  for (auto it = c.segments.rbegin(); it != c.segments.rend(); ++it) {
    CurveSegment seg;
    for (auto p = it->points.rbegin(); p != it->points.rend(); ++p) seg.points.push_back(*p);
    for (auto t = it->tangents.rbegin(); t != it->tangents.rend(); ++t)
      seg.tangents.push_back({-t->x, -t->y});
    r.segments.push_back(std::move(seg));
  }
  return r;
}

PlanarField make_field(const std::string& spec) {
  if (spec.rfind("constant:", 0) == 0) {
    std::string rest = spec.substr(9);
    auto comma = rest.find(',');
    if (comma == std::string::npos) fail("ParseError", "constant field needs two components");
    double a = std::stod(rest.substr(0, comma));
    double b = std::stod(rest.substr(comma + 1));
    return {spec, [a, b](Vec2) { return Vec2{a, b}; }};
  }
  if (spec == "rotational")
    return {spec, [](Vec2 p) { return Vec2{-p.y, p.x}; }};
  if (spec.rfind("hamiltonian:", 0) == 0) {
    // Polynomial in x and y, sum of terms c*x^i*y^j; the field is (df/dy, -df/dx).
    struct Term {
      double c;
      int i, j;
    };
    std::vector<Term> terms;
    std::string body = spec.substr(12);
    std::vector<std::string> raw;
    std::string cur;
    for (size_t k = 0; k < body.size(); ++k) {
      char ch = body[k];
      if ((ch == '+' || ch == '-') && !cur.empty() && cur.back() != '^' && cur.back() != '*') {
        raw.push_back(cur);
        cur.clear();
      }
      if (!isspace(static_cast<unsigned char>(ch))) cur += ch;
    }
    raw.push_back(cur);
    for (const auto& t : raw) {
      if (t.empty()) continue;
      Term term{1.0, 0, 0};
      size_t k = 0;
      if (t[k] == '+') ++k;
      else if (t[k] == '-') { term.c = -1.0; ++k; }
      std::string num;
      while (k < t.size() && (isdigit(static_cast<unsigned char>(t[k])) || t[k] == '.')) num += t[k++];
      if (!num.empty()) term.c *= std::stod(num);
      while (k < t.size()) {
        if (t[k] == '*') { ++k; continue; }
        char var = t[k++];
        int e = 1;
        if (k < t.size() && t[k] == '^') {
          ++k;
          std::string ex;
          while (k < t.size() && isdigit(static_cast<unsigned char>(t[k]))) ex += t[k++];
          e = std::stoi(ex);
        }
        if (var == 'x') term.i += e;
        else if (var == 'y') term.j += e;
        else fail("ParseError", std::string("unknown variable '") + var + "'");
      }
      terms.push_back(term);
    }
    auto eval_poly = [](const std::vector<Term>& ts, Vec2 p) {
      double v = 0;
      for (const auto& t : ts) v += t.c * std::pow(p.x, t.i) * std::pow(p.y, t.j);
      return v;
    };
    std::vector<Term> dfdx, dfdy;
    for (const auto& t : terms) {
      if (t.i > 0) dfdx.push_back({t.c * t.i, t.i - 1, t.j});
      if (t.j > 0) dfdy.push_back({t.c * t.j, t.i, t.j - 1});
    }
    return {spec, [=](Vec2 p) { return Vec2{eval_poly(dfdy, p), -eval_poly(dfdx, p)}; }};
  }
  fail("ParseError", "unknown field spec: " + spec);
}

PlanarField grid_field(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail("ParseError", e.what());
  }
  double x0 = j.at("x0"), y0 = j.at("y0"), dx = j.at("dx"), dy = j.at("dy");
  int nx = j.at("nx"), ny = j.at("ny");
  std::vector<std::vector<std::array<double, 2>>> vals;
  for (const auto& row : j.at("values")) {
    std::vector<std::array<double, 2>> r;
    for (const auto& v : row) r.push_back({v.at(0), v.at(1)});
    vals.push_back(r);
  }
  if (static_cast<int>(vals.size()) != ny) fail("ParseError", "grid rows != ny");
  for (const auto& row : vals)
    if (static_cast<int>(row.size()) != nx) fail("ParseError", "grid row size != nx");
  return {"grid", [=](Vec2 p) {
            double fx = (p.x - x0) / dx, fy = (p.y - y0) / dy;
            int ix = std::max(0, std::min(nx - 2, static_cast<int>(std::floor(fx))));
            int iy = std::max(0, std::min(ny - 2, static_cast<int>(std::floor(fy))));
            double ux = std::max(0.0, std::min(1.0, fx - ix));
            double uy = std::max(0.0, std::min(1.0, fy - iy));
            auto at = [&](int gx, int gy) { return Vec2{vals[gy][gx][0], vals[gy][gx][1]}; };
            Vec2 a = at(ix, iy) * (1 - ux) + at(ix + 1, iy) * ux;
            Vec2 b = at(ix, iy + 1) * (1 - ux) + at(ix + 1, iy + 1) * ux;
            return a * (1 - uy) + b * uy;
          }};
}

double corner_sign(Vec2 u, Vec2 v, Vec2 field_at_corner, Vec2 chord, double parallel_tol) {
  double s = std::abs(det(u, v)) / (u.norm() * v.norm());
  if (s > parallel_tol || dot(u, v) > 0)
    fail("KindMismatch", "corner rule applies to anti-parallel tangents only");
  double d = det(chord, field_at_corner);
  double scale = chord.norm() * field_at_corner.norm();
  if (scale == 0 || std::abs(d) <= parallel_tol * scale)
    fail("DegenerateChord", "field parallel to the interpolating chord");
  return d > 0 ? kPi : -kPi;
}

namespace {

// Total increment of the tangent-against-field angle over one sampled segment.
double segment_winding(const CurveSegment& seg, const PlanarField& f,
                       const WindingOptions& opts) {
  double total = 0;
  auto rel = [&](size_t k) {
    Vec2 xi = f.eval(seg.points[k]);
    if (xi.norm() == 0) fail("FieldVanishes", "field vanishes on the curve");
    return ang(xi, seg.tangents[k]);
  };
  double prev = rel(0);
  for (size_t k = 1; k < seg.points.size(); ++k) {
    double cur = rel(k);
    double step = principal(cur - prev);
    if (std::abs(step) > opts.max_step)
      fail("AngleStepTooLarge", "refine the sampling of the curve");
    total += step;
    prev = cur;
  }
  return total;
}

double arclen(const CurveSegment& seg) {
  double s = 0;
  for (size_t k = 1; k < seg.points.size(); ++k) s += (seg.points[k] - seg.points[k - 1]).norm();
  return s;
}

Vec2 point_at(const CurveSegment& seg, double s, bool from_end) {
  double remaining = s;
  if (!from_end) {
    for (size_t k = 1; k < seg.points.size(); ++k) {
      double d = (seg.points[k] - seg.points[k - 1]).norm();
      if (remaining <= d && d > 0)
        return seg.points[k - 1] + (seg.points[k] - seg.points[k - 1]) * (remaining / d);
      remaining -= d;
    }
    return seg.points.back();
  }
  for (size_t k = seg.points.size() - 1; k > 0; --k) {
    double d = (seg.points[k] - seg.points[k - 1]).norm();
    if (remaining <= d && d > 0)
      return seg.points[k] + (seg.points[k - 1] - seg.points[k]) * (remaining / d);
    remaining -= d;
  }
  return seg.points.front();
}

}  // namespace

double winding_number(const PiecewiseCurve& c, const PlanarField& f,
                      const WindingOptions& opts) {
  double total = 0;
  int n = static_cast<int>(c.segments.size());
  for (int k = 0; k < n; ++k) total += segment_winding(c.segments[k], f, opts);
  int corners = c.closed ? n : n - 1;
  for (int k = 0; k < corners; ++k) {
    const CurveSegment& a = c.segments[k];
    const CurveSegment& b = c.segments[(k + 1) % n];
    Vec2 u = a.tangents.back(), v = b.tangents.front();
    Vec2 corner = a.points.back();
    double s = std::abs(det(u, v)) / (u.norm() * v.norm());
    if (s > opts.parallel_tol || dot(u, v) > 0) {
      total += ang(u, v);
      continue;
    }
    // Anti-parallel corner: the pi turn's sign comes from the chord rule,
    // with the offset shrunk while the chord is degenerate against the field.
    double off = opts.corner_offset * std::min(arclen(a), arclen(b));
    double theta = 0;
    bool done = false;
    for (int attempt = 0; attempt < 6 && !done; ++attempt, off /= 10) {
      Vec2 p = point_at(a, off, true);
      Vec2 q = point_at(b, off, false);
      try {
        theta = corner_sign(u, v, f.eval(corner), q - p, opts.parallel_tol);
        done = true;
      } catch (const Error& e) {
        if (e.code != "DegenerateChord") throw;
      }
    }
    if (!done) fail("DegenerateChord", "corner could not be resolved");
    total += theta;
  }
  return total / (2 * kPi);
}

SurgerySum surgery_winding_sum(const std::vector<PiecewiseCurve>& curves, const PlanarField& f,
                               double tol, const WindingOptions& opts) {
  SurgerySum out;
  for (const auto& c : curves) out.sum += winding_number(c, f, opts);
  out.zero = std::abs(out.sum) < tol;
  return out;
}

CoherenceCheck coherence_check(long long chi, const std::vector<long long>& windings) {
  CoherenceCheck c;
  c.chi = chi;
  for (long long w : windings) c.sum += w;
  c.ok = c.sum == chi;
  return c;
}

long long coherence_solve(long long chi, const std::vector<long long>& known) {
  long long s = 0;
  for (long long w : known) s += w;
  return chi - s;
}

PiecewiseCurve circle_curve(double radius, int samples, bool ccw, Vec2 center) {
  CurveSegment seg;
  for (int k = 0; k <= samples; ++k) {
    double t = 2 * kPi * k / samples;
    if (!ccw) t = -t;
    seg.points.push_back({center.x + radius * std::cos(t), center.y + radius * std::sin(t)});
    seg.tangents.push_back({-radius * std::sin(t) * (ccw ? 1 : -1),
                            radius * std::cos(t) * (ccw ? 1 : -1)});
  }
  PiecewiseCurve c;
  c.segments.push_back(std::move(seg));
  c.closed = true;
  return c;
}

PiecewiseCurve square_curve(double h, int samples_per_side) {
  PiecewiseCurve c;
  Vec2 corners[4] = {{h, -h}, {h, h}, {-h, h}, {-h, -h}};
  for (int side = 0; side < 4; ++side) {
    Vec2 a = corners[side], b = corners[(side + 1) % 4];
    CurveSegment seg;
    for (int k = 0; k <= samples_per_side; ++k) {
      double t = static_cast<double>(k) / samples_per_side;
      seg.points.push_back(a + (b - a) * t);
      seg.tangents.push_back(b - a);
    }
    c.segments.push_back(std::move(seg));
  }
  c.closed = true;
  return c;
}

CurveSegment arc_segment(Vec2 center, double radius, double a0, double a1, int samples) {
  CurveSegment seg;
  for (int k = 0; k <= samples; ++k) {
    double t = a0 + (a1 - a0) * k / samples;
    seg.points.push_back({center.x + radius * std::cos(t), center.y + radius * std::sin(t)});
    double s = a1 > a0 ? 1.0 : -1.0;
    seg.tangents.push_back({-radius * std::sin(t) * s, radius * std::cos(t) * s});
  }
  return seg;
}

}  // namespace dividekit
