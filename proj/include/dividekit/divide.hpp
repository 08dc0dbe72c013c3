#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dividekit/util.hpp"

namespace dividekit {

// A dart is one half-edge, identified by the caller-supplied half-edge id.
using Dart = int;

struct Crossing {
  int id = -1;
  std::array<Dart, 4> rot{};  // counterclockwise
};

struct Endpoint {
  int id = -1;
  Dart half_edge = -1;
};

struct DivideEdge {
  int id = -1;
  Dart a = -1, b = -1;
};

// Validated combinatorial divide: a 4-valent planar map in a disk given by
// its rotation system, with boundary endpoints in circle order and a branch
// decomposition into endpoint-to-endpoint strands.
struct Divide {
  std::vector<Crossing> crossings;
  std::vector<Endpoint> endpoints;  // counterclockwise around the disk
  std::vector<DivideEdge> edges;
  std::vector<std::vector<int>> branches;  // ordered edge-id walks

  // Derived lookups.
  std::map<Dart, int> dart_vertex;   // dart -> crossing index, or ~endpoint index (negated-1)
  std::map<Dart, int> dart_edge;     // dart -> edge index
  std::map<Dart, Dart> mate;         // other half of the same edge
  std::map<Dart, Dart> rot_next;     // ccw next at the same vertex (crossings only)
  std::map<Dart, Dart> rot_prev;
  std::map<int, int> edge_branch;    // edge index -> branch index

  int crossing_index(int id) const;
  int edge_index(int id) const;
  bool dart_at_crossing(Dart d) const { return dart_vertex.at(d) >= 0; }
  // Straight-through partner of a dart at its crossing.
  Dart opposite(Dart d) const;
};

enum class Sign { Minus = -1, Plus = 1 };
inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
inline const char* to_string(Sign s) { return s == Sign::Plus ? "+" : "-"; }

struct Region {
  int id = -1;
  std::vector<Dart> cycle;  // divide darts of the face walk, interior on the left
  bool bounded = false;
  bool has_sign = false;
  Sign sign = Sign::Plus;
  std::set<int> incident_crossings;  // crossing indices
};

enum class VType { Minus = -1, Zero = 0, Plus = 1 };
inline const char* to_string(VType t) {
  switch (t) {
    case VType::Minus: return "-";
    case VType::Zero: return "0";
    default: return "+";
  }
}

struct AGVertex {
  int id = -1;  // index in basis order: all -, then 0, then +
  VType type = VType::Zero;
  bool from_crossing = false;
  int origin = -1;  // crossing id or region id
  int depth = -1;
};

struct AGammaDiagram {
  std::vector<AGVertex> vertices;              // basis order
  std::vector<std::pair<int, int>> edges;      // sorted (a<b) vertex-id pairs, sorted list
  std::vector<std::vector<int>> adj;           // adjacency by vertex id
  // Diagnostics: (a, b, multiplicity) for incidences collapsed to one edge.
  std::vector<std::array<int, 3>> collapsed_parallel;

  int mu() const { return static_cast<int>(vertices.size()); }
  bool has_edge(int a, int b) const;
  int edge_id(int a, int b) const;  // index into `edges`, -1 if absent
};

// Parsing + validation. `text` is the JSON document described in the README.
Divide parse_divide(const std::string& text);
Divide validate_divide(const Divide& raw);

// Faces of the rotation system augmented with the disk boundary.
// Outer face dropped; region ids in trace order.
std::vector<Region> trace_regions(const Divide& d);

// Checkerboard coloring. anchor = (region id, sign); default: lowest-id
// bounded region gets +.
void assign_signs(const Divide& d, std::vector<Region>& regions,
                  std::optional<std::pair<int, Sign>> anchor = std::nullopt);

int milnor_number(const Divide& d);

AGammaDiagram build_agamma(const Divide& d, const std::vector<Region>& regions);

// Vertices exposed to the unbounded part of the divide: a 0 vertex whose
// crossing lies on an unbounded region's walk, a region vertex whose region
// shares an edge with an unbounded region.
std::set<int> depth0_seeds(const Divide& d, const std::vector<Region>& regions,
                           const AGammaDiagram& ag);

// Iterative peeling from the seed layer; depth = layer index.
void compute_depths(AGammaDiagram& ag, const std::set<int>& seeds);

// nu[i][j] = number of crossings where branches i and j meet (i != j).
std::vector<std::vector<int>> branch_pair_multiplicities(const Divide& d);

// For tests and reports: region adjacency across divide edges,
// as pairs of region ids per edge index.
std::vector<std::pair<int, int>> edge_region_sides(const Divide& d,
                                                   const std::vector<Region>& regions);

std::string agamma_to_json(const AGammaDiagram& ag);
std::string agamma_to_dot(const AGammaDiagram& ag);

}  // namespace dividekit
