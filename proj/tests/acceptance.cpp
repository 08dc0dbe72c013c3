// Acceptance suite: one verdict line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "dividekit/arcsets.hpp"
#include "dividekit/divide.hpp"
#include "dividekit/fixtures.hpp"
#include "dividekit/homology.hpp"
#include "dividekit/kpq.hpp"
#include "dividekit/surface.hpp"
#include "dividekit/winding.hpp"
#include "json.hpp"

using namespace dividekit;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration_cast<std::chrono::microseconds>(
               std::chrono::steady_clock::now() - t0)
               .count() /
           1000.0;
  }
};

void verdict(int n, const char* what, bool pass, double ms, double budget_ms) {
  bool ok = pass && ms <= budget_ms;
  if (!ok) ++failures;
  std::printf("[%s] %2d. %s (%.1f ms)\n", ok ? "PASS" : "FAIL", n, what, ms);
  if (pass && ms > budget_ms) std::printf("       over time budget of %.0f ms\n", budget_ms);
}

struct Built {
  Divide d;
  std::vector<Region> regions;
  AGammaDiagram ag;
};

Built build(const std::string& name) {
  Built b;
  b.d = validate_divide(parse_divide(fixture_json(name)));
  b.regions = trace_regions(b.d);
  assign_signs(b.d, b.regions);
  b.ag = build_agamma(b.d, b.regions);
  compute_depths(b.ag, depth0_seeds(b.d, b.regions, b.ag));
  return b;
}

const char* kDivides[] = {"A2", "A3", "D4", "TRI"};

AGammaDiagram random_agamma(std::mt19937& rng) {
  AGammaDiagram ag;
  std::uniform_int_distribution<int> cnt(0, 4);
  int nm = cnt(rng), n0 = cnt(rng) + 1, np = cnt(rng);
  int id = 0;
  for (int i = 0; i < nm; ++i) ag.vertices.push_back({id++, VType::Minus, false, i, 0});
  for (int i = 0; i < n0; ++i) ag.vertices.push_back({id++, VType::Zero, true, i, 0});
  for (int i = 0; i < np; ++i) ag.vertices.push_back({id++, VType::Plus, false, nm + i, 0});
  std::bernoulli_distribution edge(0.45);
  for (int a = 0; a < id; ++a)
    for (int b = a + 1; b < id; ++b)
      if (ag.vertices[a].type != ag.vertices[b].type && edge(rng)) ag.edges.push_back({a, b});
  ag.adj.assign(id, {});
  for (auto [a, b] : ag.edges) {
    ag.adj[a].push_back(b);
    ag.adj[b].push_back(a);
  }
  return ag;
}

bool bundle_identities(const IntMat& s) {
  MatrixBundle b = bundle_from_s(s);
  int n = b.mu;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (b.S(i, j) != -b.S(j, i)) return false;
      if (b.S(i, j) != b.L(j, i) - b.L(i, j)) return false;
      if (b.P(i, j) != -b.L(i, j)) return false;
    }
  std::int64_t det = 1;
  for (int i = 0; i < n; ++i) det *= b.L(i, i);
  if (det != (n % 2 == 0 ? 1 : -1)) return false;
  if (b.H != monodromy_matrix(s)) return false;
  if (b.H != monodromy_from_variation(b.S, b.P)) return false;
  return true;
}

void criterion_1() {
  Timer t;
  const int expect[] = {2, 3, 4, 10};
  bool ok = true;
  for (int k = 0; k < 4; ++k)
    ok &= milnor_number(validate_divide(parse_divide(fixture_json(kDivides[k])))) == expect[k];
  verdict(1, "milnor numbers 2, 3, 4, 10 from 2d - r + 1", ok, t.ms(), 1000);
}

void criterion_2() {
  Timer t;
  bool ok = true;
  for (const auto& n : kDivides) ok &= bundle_identities(intersection_matrix(build(n).ag));
  std::mt19937 rng(20240811);
  for (int k = 0; k < 120; ++k) ok &= bundle_identities(intersection_matrix(random_agamma(rng)));
  verdict(2, "matrix identities and triple agreement, fixtures + 120 random diagrams", ok,
          t.ms(), 1000);
}

void criterion_3() {
  Timer t;
  bool ok = true;
  for (const auto& n : kDivides) ok &= build_bundle(build(n).ag).H.trace() == 1;
  verdict(3, "monodromy trace 1 on every divide fixture", ok, t.ms(), 1000);
}

void criterion_4() {
  Timer t;
  auto b = build_bundle(build("A2").ag);
  bool ok = char_poly(b.H) == std::vector<std::int64_t>{1, -1, 1} &&
            b.H.pow(6) == IntMat::identity(2);
  verdict(4, "two-cycle monodromy: t^2 - t + 1 and sixth power identity", ok, t.ms(), 1000);
}

void criterion_5() {
  Timer t;
  bool ok = true;
  for (const auto& n : kDivides) {
    auto b = build(n);
    auto s = intersection_matrix(b.ag);
    auto paths = good_paths(b.ag);
    std::vector<Arcset> coll;
    for (const auto& p : paths) coll.push_back(build_arcset(b.ag, p));
    ok &= check_adapted(coll, s).adapted;
    ok &= check_exceptional(coll, s).exceptional;
    for (const auto& a : coll) {
      auto tr = variation_of_arcset(b.ag, a);
      ok &= tr.ok;
      AbsClass want(b.ag.mu(), 0);
      want[a.path.target] = -1;
      ok &= tr.total == want;
    }
  }
  verdict(5, "adapted + exceptional certificates and telescoping on all fixtures", ok, t.ms(),
          1000);
}

AGammaDiagram synth(const std::vector<std::pair<VType, int>>& verts,
                    const std::vector<std::pair<int, int>>& edges) {
  AGammaDiagram ag;
  int id = 0;
  for (auto [tp, dep] : verts) ag.vertices.push_back({id++, tp, tp == VType::Zero, id, dep});
  for (auto [a, b] : edges) ag.edges.push_back(std::minmax(a, b));
  std::sort(ag.edges.begin(), ag.edges.end());
  ag.adj.assign(id, {});
  for (auto [a, b] : ag.edges) {
    ag.adj[a].push_back(b);
    ag.adj[b].push_back(a);
  }
  for (auto& v : ag.adj) std::sort(v.begin(), v.end());
  return ag;
}

void criterion_6() {
  Timer t;
  bool ok = true;
  {
    // (K+ | K+-) pairs to +1 at the far vertex only.
    auto sy = synth({{VType::Minus, 1}, {VType::Plus, 0}}, {{0, 1}});
    auto a = build_arcset(sy, good_paths(sy)[0]);
    ok &= a.groups.size() == 1 && a.groups[0].contribution == RelClass{1, 0};
  }
  {
    // (K-+ | K+-): -1 at the group's source, +1 at its target.
    auto sy = synth({{VType::Minus, 0}, {VType::Minus, 2}, {VType::Plus, 1}}, {{0, 2}, {1, 2}});
    auto a = build_arcset(sy, good_paths(sy)[1]);
    ok &= a.groups.size() == 2 && a.groups[1].contribution == RelClass{-1, 1, 0};
  }
  {
    // (K-+ | K+0): -1 at the source, +1 on the relevant difference.
    auto sy = synth({{VType::Minus, 0}, {VType::Minus, 0}, {VType::Zero, 2}, {VType::Plus, 1}},
                    {{0, 3}, {1, 3}, {1, 2}, {2, 3}});
    auto a = build_arcset(sy, good_paths(sy)[2]);
    ok &= a.groups.size() == 2 && a.groups[1].contribution == RelClass{-1, 1, 1, 0};
  }
  verdict(6, "group cancellation triple on synthetic paths", ok, t.ms(), 1000);
}

void criterion_7() {
  Timer t;
  bool ok = true;
  for (const auto& n : kDivides) {
    auto b = build(n);
    auto surf = CombSurface::build(b.d, b.regions);
    auto walks = surf.vanishing_cycle_walks(b.ag);
    auto paths = good_paths(b.ag);
    for (const auto& p : paths) {
      auto a = build_arcset(b.ag, p);
      ok &= a.pattern_links.size() + 1 == a.components.size();
      for (const auto& link : a.pattern_links) ok &= link[2] == -1;
      // The chain of cycles the arcset contracts onto: walks at the path's
      // vertex sequence; consecutive ones cross once, the rest are disjoint.
      std::vector<int> vertices{p.source()};
      for (auto [s_, t_] : p.edges) vertices.push_back(t_);
      std::vector<SurfWalk> chain;
      for (int v : vertices) chain.push_back(walks[v]);
      auto sm = surf.smooth_all_crossings(chain);
      ok &= sm.crossings_resolved == static_cast<int>(chain.size()) - 1;
      ok &= sm.components == 1;
      auto cut = surf.cut_along(sm.walks[0]);
      ok &= cut.components == 1;  // non-separating
    }
  }
  verdict(7, "linear-order chains smooth to one non-separating curve", ok, t.ms(), 2000);
}

void criterion_8() {
  Timer t;
  bool ok = true;
  for (const auto& n : kDivides) {
    auto b = build(n);
    auto surf = CombSurface::build(b.d, b.regions);
    int r = static_cast<int>(b.d.branches.size());
    int dd = static_cast<int>(b.d.crossings.size());
    ok &= surf.euler_characteristic() == r - 2 * dd;
    ok &= surf.boundary_components() == r;
    ok &= milnor_number(b.d) == 2 * surf.genus() + r - 1;
    auto s = intersection_matrix(b.ag);
    auto walks = surf.vanishing_cycle_walks(b.ag);
    for (int i = 0; i < b.ag.mu(); ++i)
      for (int j = 0; j < b.ag.mu(); ++j)
        if (i != j) ok &= surf.algebraic_intersection(walks[i], walks[j]) == s(i, j);
  }
  verdict(8, "surface invariants and walk crossings match the diagram form", ok, t.ms(), 2000);
}

void criterion_9() {
  Timer t;
  auto data = nlohmann::json::parse(fixture_json("XCUSP"));
  int nu12 = data.at("nu12");
  std::vector<std::vector<int>> nu{{0, nu12}, {nu12, 0}};
  auto v = seifert_separating_value({1, 0}, nu);
  bool ok = v.value == -3 && v.bound_satisfied && !v.degenerate;
  verdict(9, "self-pairing of the separating class is -3, within the -2 bound", ok, t.ms(),
          1000);
}

void criterion_10() {
  Timer t;
  auto data = nlohmann::json::parse(fixture_json("XCUSP"));
  int g1 = data.at("g1"), g2 = data.at("g2");
  long long w1 = data.at("windings").at(0), w2 = data.at("windings").at(1);
  bool ok = coherence_solve(2 - 2 * g1 - 4, {0, 0, 0}) == w1 && w1 == -8;
  ok &= coherence_solve(2 - 2 * g2 - 4, {0, 0, 0}) == w2 && w2 == -2;
  ok &= coherence_solve(2 - 2 * 1 - 2, {0}) == -2;  // genus-1 bounding pair
  verdict(10, "boundary winding numbers -8 and -2 and the bounding-pair value", ok, t.ms(),
          1000);
}

void criterion_11() {
  Timer t;
  bool ok = true;
  const PlanarField fx = make_field("constant:1,0");
  // Closed analytic curves land on integers.
  auto near_int = [](double v) { return std::abs(v - std::round(v)) < 1e-6; };
  auto circle = circle_curve(1.0, 1440);
  ok &= near_int(winding_number(circle, fx));
  ok &= std::abs(winding_number(circle, fx) - 1.0) < 1e-6;
  ok &= std::abs(winding_number(circle_curve(1.0, 1440, false), fx) + 1.0) < 1e-6;
  ok &= std::abs(winding_number(square_curve(1.0, 64), fx) - 1.0) < 1e-6;
  auto ell = circle_curve(1.0, 1440, true, {4.0, -2.0});
  ok &= std::abs(winding_number(ell, make_field("rotational")) - 1.0) < 1e-6;
  // Corner rule against the offset-refinement oracle.
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> angle(0, 6.283185307179586);
  std::uniform_real_distribution<double> curv(-2.0, 2.0);
  int trials = 0;
  for (int k = 0; trials < 1000 && k < 2000; ++k) {
    double a = angle(rng);
    Vec2 u{std::cos(a), std::sin(a)};
    Vec2 nrm{-u.y, u.x};
    double ka = curv(rng), kb = curv(rng);
    if (std::abs(ka - kb) < 1e-3) continue;
    Vec2 xi = u * (k % 2 ? 1.0 : -1.0);
    auto sign_at = [&](double off) {
      Vec2 p = u * (-off) + nrm * (ka * off * off);
      Vec2 q = u * (-off) + nrm * (kb * off * off);
      return corner_sign(u, u * -1.0, xi, q - p);
    };
    ok &= sign_at(1e-3) == sign_at(1e-6) && sign_at(1e-6) == sign_at(1e-8);
    ++trials;
  }
  ok &= trials == 1000;
  // Variation-type curves: image arc * reversed arc sums to zero.
  auto bump = [](double height) {
    CurveSegment seg;
    int n = 400;
    for (int k2 = 0; k2 <= n; ++k2) {
      double s = static_cast<double>(k2) / n;
      seg.points.push_back({s, height * s * s * (1 - s) * (1 - s) * 16});
      seg.tangents.push_back(
          {1, height * 16 * (2 * s * (1 - s) * (1 - s) - s * s * 2 * (1 - s))});
    }
    return seg;
  };
  for (double h : {0.4, -0.7, 1.3}) {
    PiecewiseCurve var;
    var.segments.push_back(bump(h));
    PiecewiseCurve back;
    back.closed = false;
    back.segments.push_back(bump(0.0));
    var.segments.push_back(reversed(back).segments[0]);
    ok &= surgery_winding_sum({var}, fx, 1e-6).zero;
  }
  verdict(11, "winding numerics: integers, corner oracle x1000, variation sums", ok, t.ms(),
          5000);
}

void criterion_12() {
  Timer t;
  bool ok = true;
  auto m35 = KpqModel::build(3, 5);
  ok &= m35.genus() == 4;
  ok &= m35.boundary_sides() == 30;  // metric length 15
  ok &= m35.betti() == 8;
  ok &= m35.gluing_equivariant();
  auto m23 = KpqModel::build(2, 3);
  ok &= m23.gluing_equivariant();
  for (int e = 0; e < m23.edge_count(); ++e) {
    auto arc = m23.variation_arc(e, Rat(1, 2));
    ok &= arc.closes && arc.simple && arc.class_nonzero && arc.class_primitive;
  }
  verdict(12, "bipartite spine: genus 4, length 15, betti 8, equivariance, simple arcs", ok,
          t.ms(), 1000);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
