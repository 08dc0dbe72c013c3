#include <algorithm>

#include "doctest.h"
#include "dividekit/divide.hpp"
#include "dividekit/fixtures.hpp"

using namespace dividekit;

namespace {

Divide load(const std::string& name) { return validate_divide(parse_divide(fixture_json(name))); }

struct Built {
  Divide d;
  std::vector<Region> regions;
  AGammaDiagram ag;
};

Built build(const std::string& name) {
  Built b;
  b.d = load(name);
  b.regions = trace_regions(b.d);
  assign_signs(b.d, b.regions);
  b.ag = build_agamma(b.d, b.regions);
  compute_depths(b.ag, depth0_seeds(b.d, b.regions, b.ag));
  return b;
}

int count_bounded(const std::vector<Region>& rs) {
  return static_cast<int>(std::count_if(rs.begin(), rs.end(),
                                        [](const Region& r) { return r.bounded; }));
}

}  // namespace

TEST_CASE("fixtures validate") {
  for (const auto& n : {"A2", "A3", "D4", "TRI"}) CHECK_NOTHROW(load(n));
}

TEST_CASE("one-crossing loop: regions and signs") {
  auto b = build("A2");
  CHECK(b.regions.size() == 3);
  CHECK(count_bounded(b.regions) == 1);
  // Checkerboard: sides of every edge differ.
  auto sides = edge_region_sides(b.d, b.regions);
  for (auto [x, y] : sides) CHECK(b.regions[x].sign != b.regions[y].sign);
  // Anchored: the loop region is +, the outer region adjacent across the loop
  // edge is -, the bottom region between the tails is + again.
  for (const auto& r : b.regions)
    if (r.bounded) CHECK(r.sign == Sign::Plus);
}

TEST_CASE("anchor flip flips every sign") {
  auto b = build("A2");
  std::vector<Region> flipped = trace_regions(b.d);
  int loop_id = -1;
  for (const auto& r : flipped)
    if (r.bounded) loop_id = r.id;
  assign_signs(b.d, flipped, std::pair{loop_id, Sign::Minus});
  for (size_t i = 0; i < flipped.size(); ++i) CHECK(flipped[i].sign == flip(b.regions[i].sign));
  // AGamma edges are unchanged, types flip.
  auto ag2 = build_agamma(b.d, flipped);
  CHECK(ag2.edges.size() == b.ag.edges.size());
}

TEST_CASE("lens divide: regions") {
  auto b = build("A3");
  // 1 + d + r faces in the disk: 1 bounded lens, 4 unbounded.
  CHECK(b.regions.size() == 5);
  CHECK(count_bounded(b.regions) == 1);
}

TEST_CASE("triangle divide: regions") {
  auto b = build("D4");
  CHECK(b.regions.size() == 7);
  CHECK(count_bounded(b.regions) == 1);
}

TEST_CASE("milnor numbers") {
  CHECK(milnor_number(load("A2")) == 2);
  CHECK(milnor_number(load("A3")) == 3);
  CHECK(milnor_number(load("D4")) == 4);
  CHECK(milnor_number(load("TRI")) == 10);
}

TEST_CASE("agamma structure: A2 is a single edge") {
  auto b = build("A2");
  REQUIRE(b.ag.mu() == 2);
  CHECK(b.ag.vertices[0].type == VType::Zero);
  CHECK(b.ag.vertices[1].type == VType::Plus);
  REQUIRE(b.ag.edges.size() == 1);
  CHECK(b.ag.has_edge(0, 1));
}

TEST_CASE("agamma structure: A3 is a path 0-+-0") {
  auto b = build("A3");
  REQUIRE(b.ag.mu() == 3);
  CHECK(b.ag.vertices[0].type == VType::Zero);
  CHECK(b.ag.vertices[1].type == VType::Zero);
  CHECK(b.ag.vertices[2].type == VType::Plus);
  REQUIRE(b.ag.edges.size() == 2);
  CHECK(b.ag.has_edge(0, 2));
  CHECK(b.ag.has_edge(1, 2));
}

TEST_CASE("agamma structure: D4 is a star") {
  auto b = build("D4");
  REQUIRE(b.ag.mu() == 4);
  for (int i = 0; i < 3; ++i) {
    CHECK(b.ag.vertices[i].type == VType::Zero);
    CHECK(b.ag.has_edge(i, 3));
  }
  CHECK(b.ag.vertices[3].type == VType::Plus);
  CHECK(b.ag.edges.size() == 3);
}

TEST_CASE("agamma structure: TRI") {
  auto b = build("TRI");
  REQUIRE(b.ag.mu() == 10);
  int zeros = 0, signs = 0;
  for (const auto& v : b.ag.vertices) (v.type == VType::Zero ? zeros : signs)++;
  CHECK(zeros == 6);
  CHECK(signs == 4);
  CHECK(b.ag.edges.size() == 15);
  CHECK(b.ag.collapsed_parallel.empty());
  // The central region is adjacent to all three inner crossings and all three
  // lunes; each lune is adjacent to one outer crossing.
  int center = -1;
  for (const auto& v : b.ag.vertices)
    if (!v.from_crossing && b.ag.adj[v.id].size() == 6) center = v.id;
  REQUIRE(center >= 0);
}

TEST_CASE("depths") {
  auto a2 = build("A2");
  for (const auto& v : a2.ag.vertices) CHECK(v.depth == 0);
  auto d4 = build("D4");
  for (const auto& v : d4.ag.vertices) CHECK(v.depth == 0);
  auto tri = build("TRI");
  int depth1 = 0;
  for (const auto& v : tri.ag.vertices) {
    if (v.depth == 1) {
      ++depth1;
      CHECK(!v.from_crossing);
      CHECK(tri.ag.adj[v.id].size() == 6);  // the central region
    } else {
      CHECK(v.depth == 0);
    }
  }
  CHECK(depth1 == 1);
}

TEST_CASE("depth peeling bound and invariance") {
  for (const auto& n : {"A2", "A3", "D4", "TRI"}) {
    auto b = build(n);
    int mu = b.ag.mu();
    for (const auto& v : b.ag.vertices) {
      CHECK(v.depth >= 0);
      CHECK(v.depth <= mu);
    }
  }
}

TEST_CASE("branch pair multiplicities") {
  auto a3 = load("A3");
  auto nu3 = branch_pair_multiplicities(a3);
  CHECK(nu3[0][1] == 2);
  auto d4 = load("D4");
  auto nu4 = branch_pair_multiplicities(d4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(nu4[i][j] == 1);
  // sum_{i<j} nu_ij + self-crossings = d.
  auto a2 = load("A2");
  auto nu2 = branch_pair_multiplicities(a2);
  CHECK(nu2.size() == 1);
  int d = static_cast<int>(a2.crossings.size());
  CHECK(d == 1);  // the loop's self-crossing
  auto tri = load("TRI");
  auto nut = branch_pair_multiplicities(tri);
  int total = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) total += nut[i][j];
  CHECK(total == 6);
}

TEST_CASE("validation errors") {
  // Branch turning at the crossing instead of going straight.
  std::string turning = R"({
    "crossings": [{"id": 0, "cyclic": [20, 21, 11, 30]}],
    "endpoints": [{"id": 0, "half_edge": 10}, {"id": 1, "half_edge": 31}],
    "edges": [
      {"id": 0, "ends": [10, 11]},
      {"id": 1, "ends": [21, 20]},
      {"id": 2, "ends": [30, 31]}
    ],
    "branches": [[0, 2, 1]]
  })";
  CHECK_THROWS_WITH_AS(validate_divide(parse_divide(turning)),
                       doctest::Contains("BranchNotThroughCrossing"), Error);

  // Two disjoint arcs.
  std::string disconnected = R"({
    "crossings": [],
    "endpoints": [
      {"id": 0, "half_edge": 10}, {"id": 1, "half_edge": 11},
      {"id": 2, "half_edge": 20}, {"id": 3, "half_edge": 21}
    ],
    "edges": [{"id": 0, "ends": [10, 11]}, {"id": 1, "ends": [20, 21]}],
    "branches": [[0], [1]]
  })";
  CHECK_THROWS_WITH_AS(validate_divide(parse_divide(disconnected)),
                       doctest::Contains("Disconnected"), Error);

  // Degree != 4.
  std::string tri_valent = R"({
    "crossings": [{"id": 7, "cyclic": [1, 2, 3]}],
    "endpoints": [],
    "edges": [],
    "branches": []
  })";
  CHECK_THROWS_WITH_AS(validate_divide(parse_divide(tri_valent)),
                       doctest::Contains("NonQuadrivalent"), Error);

  // Dangling half-edge: edge references a half-edge no vertex owns.
  std::string dangling = R"({
    "crossings": [{"id": 0, "cyclic": [20, 21, 11, 30]}],
    "endpoints": [{"id": 0, "half_edge": 10}, {"id": 1, "half_edge": 31}],
    "edges": [
      {"id": 0, "ends": [10, 11]},
      {"id": 1, "ends": [20, 99]},
      {"id": 2, "ends": [30, 31]}
    ],
    "branches": [[0, 1, 2]]
  })";
  CHECK_THROWS_WITH_AS(validate_divide(parse_divide(dangling)),
                       doctest::Contains("DanglingHalfEdge"), Error);
}

TEST_CASE("euler count invariant on all fixtures") {
  for (const auto& n : {"A2", "A3", "D4", "TRI"}) {
    auto b = build(n);
    long long F = static_cast<long long>(b.regions.size());
    long long E = static_cast<long long>(b.d.edges.size() + b.d.endpoints.size());
    long long V = static_cast<long long>(b.d.crossings.size() + b.d.endpoints.size());
    CHECK(F - E + V == 1);
    // mu equals the vertex count of the diagram.
    CHECK(milnor_number(b.d) == b.ag.mu());
  }
}

TEST_CASE("peeling stalls on a split synthetic diagram") {
  // Two components, seeds only in one of them.
  AGammaDiagram ag;
  ag.vertices.push_back({0, VType::Minus, false, 0, -1});
  ag.vertices.push_back({1, VType::Plus, false, 1, -1});
  ag.edges.push_back({0, 1});
  ag.vertices.push_back({2, VType::Zero, true, 0, -1});  // isolated
  ag.adj = {{1}, {0}, {}};
  CHECK_THROWS_WITH_AS(compute_depths(ag, {0}), doctest::Contains("PeelingStalled"), Error);
}

TEST_CASE("dot export shape") {
  Divide d = validate_divide(parse_divide(fixture_json("A2")));
  auto regions = trace_regions(d);
  assign_signs(d, regions);
  auto ag = build_agamma(d, regions);
  compute_depths(ag, depth0_seeds(d, regions, ag));
  auto dot = agamma_to_dot(ag);
  CHECK(dot.find("graph") != std::string::npos);
  CHECK(dot.find("--") != std::string::npos);
  auto js = agamma_to_json(ag);
  CHECK(js.find("vertices") != std::string::npos);
}
