#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dividekit/divide.hpp"
#include "dividekit/homology.hpp"

namespace dividekit {

enum class ArcKind {
  Kp0,  // edge + -> 0
  KpM,  // edge + -> -
  K0M,  // edge 0 -> -
  K0p,  // reversal of Kp0
  KMp,  // reversal of KpM
  KM0,  // reversal of K0M
  Kp,   // depth-0 + vertex
  Km,   // depth-0 - vertex
  K0,   // depth-0 0 vertex
};
const char* to_string(ArcKind k);
bool kind_is_reversal(ArcKind k);  // first letter '-' or '0'->'+' family

struct RelevantSet {
  bool edge_anchor = false;
  int a = -1, b = -1;  // edge (a,b) or vertex a
  std::set<int> members;
};

// N[v] = {v} plus neighbors (self-adjacency included).
std::set<int> closed_neighborhood(const AGammaDiagram& ag, int v);

// Anchor is an edge (two adjacent vertex ids) or a depth-0 vertex (pass b = -1).
RelevantSet relevant_vertices(const AGammaDiagram& ag, int a, int b = -1);

struct BasicArc {
  ArcKind kind;
  int anchor_a = -1, anchor_b = -1;  // edge s,t or vertex
  RelClass pairing;                  // +-1 on the relevant set
};

BasicArc basic_arc(const AGammaDiagram& ag, ArcKind kind, int a, int b = -1);

struct GoodPath {
  int target = -1;
  // Edge i runs source[i] -> target[i]; depths strictly increase.
  std::vector<std::pair<int, int>> edges;
  int source() const { return edges.empty() ? target : edges.front().first; }
  int length() const { return static_cast<int>(edges.size()); }
};

// Deterministic choice: lowest-id eligible parent per vertex.
std::vector<GoodPath> good_paths(const AGammaDiagram& ag);

struct ArcsetGroup {
  std::vector<int> comps;       // component indices
  RelClass contribution;        // sum of the group's pairing vectors
  std::string shape;            // e.g. "(K+ | K+-)", "(K-+ | K+-)"
};

struct Arcset {
  GoodPath path;
  std::vector<BasicArc> components;  // component 0 = depth-0 arc for nonconstant paths
  std::vector<ArcsetGroup> groups;
  RelClass aggregate;                // sum of component pairings
  std::vector<int> linear_order;     // component indices
  // Consecutive linear-order pairs (l, r): monodromy image of component l meets
  // component r once with sign -1.
  std::vector<std::array<int, 3>> pattern_links;
};

Arcset build_arcset(const AGammaDiagram& ag, const GoodPath& path);

struct AdaptedReport {
  bool adapted = false;
  // (row j, col i, got, want): row = arcset index, col = cycle index.
  std::vector<std::array<std::int64_t, 4>> violations;
};

AdaptedReport check_adapted(const std::vector<Arcset>& collection, const IntMat& s);

struct TelescopeReport {
  AbsClass total;                      // must be -e_target
  std::vector<AbsClass> partial_sums;  // after each component
  bool ok = false;
};

// Per-component variation classes by kind; the sum telescopes to -[V_target].
TelescopeReport variation_of_arcset(const AGammaDiagram& ag, const Arcset& aset);

struct ExceptionalReport {
  bool exceptional = false;
  bool adapted = false;
  bool upper_zero = false;   // K_i . V_j = 0 for i < j
  bool diagonal_one = false; // K_i . V_i = 1
  bool linear_ok = false;    // every arcset's pattern is a chain
  std::vector<std::string> reasons;
};

ExceptionalReport check_exceptional(const std::vector<Arcset>& collection, const IntMat& s);

std::string arcset_to_json(const AGammaDiagram& ag, const Arcset& aset,
                           const AdaptedReport& ar, const ExceptionalReport& er,
                           const TelescopeReport& tr);

}  // namespace dividekit
