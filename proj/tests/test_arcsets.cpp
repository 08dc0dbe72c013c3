#include <algorithm>

#include "doctest.h"
#include "dividekit/arcsets.hpp"
#include "dividekit/divide.hpp"
#include "dividekit/fixtures.hpp"
#include "dividekit/homology.hpp"

using namespace dividekit;

namespace {

AGammaDiagram agamma_of(const std::string& name) {
  Divide d = validate_divide(parse_divide(fixture_json(name)));
  auto regions = trace_regions(d);
  assign_signs(d, regions);
  auto ag = build_agamma(d, regions);
  compute_depths(ag, depth0_seeds(d, regions, ag));
  return ag;
}

// Hand-built typed diagram; depths assigned by the caller.
AGammaDiagram synth(const std::vector<std::pair<VType, int>>& verts,
                    const std::vector<std::pair<int, int>>& edges) {
  AGammaDiagram ag;
  int id = 0;
  for (auto [t, dep] : verts) ag.vertices.push_back({id++, t, t == VType::Zero, id, dep});
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

std::vector<Arcset> full_collection(const AGammaDiagram& ag) {
  auto paths = good_paths(ag);
  std::vector<Arcset> out;
  for (const auto& p : paths) out.push_back(build_arcset(ag, p));
  return out;
}

}  // namespace

TEST_CASE("relevant vertices on the lens diagram") {
  auto ag = agamma_of("A3");  // basis: v0_a(0), v0_b(1), v+(2)
  auto rs = relevant_vertices(ag, 2, 0);
  CHECK(rs.members == std::set<int>{1, 2});
  // Reversal-independent: anchor order does not matter.
  auto rs2 = relevant_vertices(ag, 0, 2);
  CHECK(rs2.members == rs.members);
}

TEST_CASE("relevant vertices on the star and for sign vertices") {
  auto ag = agamma_of("D4");  // v0(0..2), v+(3), all depth 0
  auto rs = relevant_vertices(ag, 3);
  CHECK(rs.members == std::set<int>{0, 1, 2, 3});
  // A depth-0 minus vertex is its own relevant set.
  auto sy = synth({{VType::Minus, 0}, {VType::Plus, 0}}, {{0, 1}});
  CHECK(relevant_vertices(sy, 0).members == std::set<int>{0});
  // 0-type anchors are rejected.
  CHECK_THROWS_WITH_AS(relevant_vertices(agamma_of("A2"), 0), doctest::Contains("BadAnchor"),
                       Error);
}

TEST_CASE("basic arcs") {
  auto ag = agamma_of("A3");
  auto k = basic_arc(ag, ArcKind::Kp0, 2, 0);
  CHECK(k.pairing == RelClass{0, -1, -1});
  auto kr = basic_arc(ag, ArcKind::K0p, 0, 2);
  CHECK(kr.pairing == RelClass{0, 1, 1});
  auto d4 = agamma_of("D4");
  auto kp = basic_arc(d4, ArcKind::Kp, 3);
  CHECK(kp.pairing == RelClass{1, 1, 1, 1});
  CHECK_THROWS_WITH_AS(basic_arc(ag, ArcKind::KpM, 2, 0), doctest::Contains("KindMismatch"),
                       Error);
}

TEST_CASE("good paths on depth-0 fixtures are constant") {
  auto d4 = agamma_of("D4");
  for (const auto& p : good_paths(d4)) CHECK(p.length() == 0);
}

TEST_CASE("good paths on the triple-lens fixture") {
  auto ag = agamma_of("TRI");
  auto paths = good_paths(ag);
  int center = -1;
  for (const auto& v : ag.vertices)
    if (v.depth == 1) center = v.id;
  REQUIRE(center >= 0);
  for (const auto& p : paths) {
    if (p.target == center) {
      REQUIRE(p.length() == 1);
      auto [s, t] = p.edges[0];
      CHECK(t == center);
      CHECK(ag.vertices[s].depth == 0);
      // Opposite sign types at the two ends.
      CHECK(ag.vertices[s].type != ag.vertices[center].type);
      CHECK(ag.vertices[s].type != VType::Zero);
    } else {
      CHECK(p.length() == 0);
    }
  }
  // Monotone depth along every path; overlap only in shared prefixes.
  for (const auto& p : paths)
    for (auto [s, t] : p.edges) CHECK(ag.vertices[s].depth < ag.vertices[t].depth);
}

TEST_CASE("good paths need a sign-typed parent") {
  // Depth-1 plus vertex whose only depth-0 neighbor is a 0 vertex.
  auto sy = synth({{VType::Zero, 0}, {VType::Plus, 1}}, {{0, 1}});
  CHECK_THROWS_WITH_AS(good_paths(sy), doctest::Contains("NoEligibleParent"), Error);
}

TEST_CASE("arcset for a constant path") {
  auto d4 = agamma_of("D4");
  auto paths = good_paths(d4);
  auto a = build_arcset(d4, paths[3]);  // the + vertex
  REQUIRE(a.components.size() == 1);
  CHECK(a.components[0].kind == ArcKind::Kp);
  CHECK(a.linear_order == std::vector<int>{0});
  CHECK(a.pattern_links.empty());
  auto a0 = build_arcset(d4, paths[0]);  // a 0 vertex
  CHECK(a0.components[0].kind == ArcKind::K0);
}

TEST_CASE("two-component arcset on the triple-lens center") {
  auto ag = agamma_of("TRI");
  auto paths = good_paths(ag);
  int center = -1;
  for (const auto& v : ag.vertices)
    if (v.depth == 1) center = v.id;
  auto a = build_arcset(ag, paths[center]);
  REQUIRE(a.components.size() == 2);
  bool center_plus = ag.vertices[center].type == VType::Plus;
  CHECK(a.components[0].kind == (center_plus ? ArcKind::Km : ArcKind::Kp));
  CHECK(a.components[1].kind == (center_plus ? ArcKind::KMp : ArcKind::KpM));
  // m = 1 orders: backward kind first for a + target, depth-0 arc first else.
  if (center_plus)
    CHECK(a.linear_order == std::vector<int>{1, 0});
  else
    CHECK(a.linear_order == std::vector<int>{0, 1});
  CHECK(a.pattern_links.size() == 1);
}

TEST_CASE("three-component arcset along a minus-plus-minus path") {
  // u(-) depth 0, v(-) depth 2, w(+) depth 1; path u -> w -> v.
  auto sy = synth({{VType::Minus, 0}, {VType::Minus, 2}, {VType::Plus, 1}},
                  {{0, 2}, {1, 2}});
  auto paths = good_paths(sy);
  const auto& pv = paths[1];
  REQUIRE(pv.length() == 2);
  auto a = build_arcset(sy, pv);
  REQUIRE(a.components.size() == 3);
  CHECK(a.components[0].kind == ArcKind::Km);
  CHECK(a.components[1].kind == ArcKind::KMp);
  CHECK(a.components[2].kind == ArcKind::KpM);
  CHECK(a.linear_order == std::vector<int>{1, 0, 2});
  // Aggregate pairing is the unit vector at the target.
  CHECK(a.aggregate == RelClass{0, 1, 0});
  // Variation telescopes to -[V_target].
  auto tr = variation_of_arcset(sy, a);
  CHECK(tr.total == AbsClass{0, -1, 0});
  // Full collection is adapted.
  auto coll = full_collection(sy);
  auto s = intersection_matrix(sy);
  CHECK(check_adapted(coll, s).adapted);
}

TEST_CASE("group pairings on synthetic paths") {
  // (K+ | K+-): s(+) at depth 0, t(-): contribution is +1 at t only.
  {
    auto sy = synth({{VType::Minus, 1}, {VType::Plus, 0}}, {{0, 1}});
    auto paths = good_paths(sy);
    auto a = build_arcset(sy, paths[0]);  // target: the minus vertex
    REQUIRE(a.groups.size() == 1);
    CHECK(a.groups[0].shape == "(K+ | K+-)");
    CHECK(a.groups[0].contribution == RelClass{1, 0});
  }
  // (K-+ | K+-): -1 at s(e1), +1 at t(e2).
  {
    auto sy = synth({{VType::Minus, 0}, {VType::Minus, 2}, {VType::Plus, 1}},
                    {{0, 2}, {1, 2}});
    auto a = build_arcset(sy, good_paths(sy)[1]);
    REQUIRE(a.groups.size() == 2);
    CHECK(a.groups[1].shape == "(K-+ | K+-)");
    CHECK(a.groups[1].contribution == RelClass{-1, 1, 0});
  }
  // (K-+ | K+0): -1 at s(e1), +1 on the relevant difference.
  {
    // u(-,0) id0, x(-,0) id1, v(0, depth 2) id2, w(+, depth 1) id3.
    auto sy = synth({{VType::Minus, 0}, {VType::Minus, 0}, {VType::Zero, 2}, {VType::Plus, 1}},
                    {{0, 3}, {1, 3}, {1, 2}, {2, 3}});
    auto paths = good_paths(sy);
    REQUIRE(paths[2].length() == 2);
    auto a = build_arcset(sy, paths[2]);
    REQUIRE(a.groups.size() == 2);
    CHECK(a.groups[1].shape == "(K-+ | K+0)");
    CHECK(a.groups[1].contribution == RelClass{-1, 1, 1, 0});
    CHECK(a.aggregate == RelClass{0, 1, 1, 0});
    auto s = intersection_matrix(sy);
    CHECK(check_adapted(full_collection(sy), s).adapted);
  }
}

TEST_CASE("adapted and exceptional certificates on fixtures") {
  for (const auto& n : {"A2", "A3", "D4", "TRI"}) {
    auto ag = agamma_of(n);
    auto s = intersection_matrix(ag);
    auto coll = full_collection(ag);
    auto ar = check_adapted(coll, s);
    CHECK(ar.adapted);
    CHECK(ar.violations.empty());
    auto er = check_exceptional(coll, s);
    CHECK(er.exceptional);
    for (const auto& a : coll) {
      auto tr = variation_of_arcset(ag, a);
      CHECK(tr.ok);
    }
  }
}

TEST_CASE("reversed ordering breaks the upper-zero condition") {
  auto ag = agamma_of("D4");
  auto s = intersection_matrix(ag);
  auto coll = full_collection(ag);
  std::reverse(coll.begin(), coll.end());
  auto ar = check_adapted(coll, s);
  CHECK(!ar.adapted);
  CHECK(!ar.violations.empty());
  auto er = check_exceptional(coll, s);
  CHECK(!er.exceptional);
  CHECK(!er.upper_zero);
}

TEST_CASE("two-route variation agreement") {
  for (const auto& n : {"A3", "D4", "TRI"}) {
    auto ag = agamma_of(n);
    auto bundle = build_bundle(ag);
    for (const auto& a : full_collection(ag)) {
      auto tr = variation_of_arcset(ag, a);
      auto via_bundle = variation_apply(bundle, a.aggregate);
      CHECK(via_bundle == tr.total);
    }
  }
}

TEST_CASE("linear order chain shape on all generated arcsets") {
  for (const auto& n : {"A2", "A3", "D4", "TRI"}) {
    auto ag = agamma_of(n);
    for (const auto& a : full_collection(ag)) {
      CHECK(a.linear_order.size() == a.components.size());
      CHECK(a.pattern_links.size() + 1 == a.components.size());
      // Every component appears exactly once.
      auto lo = a.linear_order;
      std::sort(lo.begin(), lo.end());
      for (size_t i = 0; i < lo.size(); ++i) CHECK(lo[i] == static_cast<int>(i));
      for (const auto& link : a.pattern_links) CHECK(link[2] == -1);
    }
  }
}

TEST_CASE("longer paths: orders follow the case table") {
  // depth chain -,+,-,+ : target + at depth 3, m = 3.
  auto sy = synth({{VType::Minus, 0}, {VType::Minus, 2}, {VType::Plus, 1}, {VType::Plus, 3}},
                  {{0, 2}, {1, 2}, {1, 3}});
  auto paths = good_paths(sy);
  REQUIRE(paths[3].length() == 3);
  auto a = build_arcset(sy, paths[3]);
  REQUIRE(a.components.size() == 4);
  CHECK(a.components[0].kind == ArcKind::Km);
  CHECK(a.components[1].kind == ArcKind::KMp);
  CHECK(a.components[2].kind == ArcKind::KpM);
  CHECK(a.components[3].kind == ArcKind::KMp);
  // backward kinds descending (e3, e1), center, forward ascending (e2).
  CHECK(a.linear_order == std::vector<int>{3, 1, 0, 2});
  CHECK(a.aggregate[3] == 1);
  auto tr = variation_of_arcset(sy, a);
  CHECK(tr.total == AbsClass{0, 0, 0, -1});
}

TEST_CASE("anchors of positive depth are rejected") {
  auto ag = agamma_of("TRI");
  int center = -1;
  for (const auto& v : ag.vertices)
    if (v.depth == 1) center = v.id;
  REQUIRE(center >= 0);
  CHECK_THROWS_WITH_AS(relevant_vertices(ag, center), doctest::Contains("BadAnchor"), Error);
}
