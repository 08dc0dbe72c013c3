#include "dividekit/divide.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "json.hpp"

namespace dividekit {

namespace {

using nlohmann::json;

std::string dart_name(Dart d) { return "half-edge " + std::to_string(d); }

}  // namespace

int Divide::crossing_index(int id) const {
  for (size_t i = 0; i < crossings.size(); ++i)
    if (crossings[i].id == id) return static_cast<int>(i);
  return -1;
}

int Divide::edge_index(int id) const {
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].id == id) return static_cast<int>(i);
  return -1;
}

Dart Divide::opposite(Dart d) const {
  int ci = dart_vertex.at(d);
  if (ci < 0) fail("Internal", "opposite() on endpoint dart");
  const auto& rot = crossings[ci].rot;
  for (int k = 0; k < 4; ++k)
    if (rot[k] == d) return rot[(k + 2) % 4];
  fail("Internal", "dart not in rotation");
}

Divide parse_divide(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail("ParseError", e.what());
  }
  Divide d;
  try {
    for (const auto& c : j.at("crossings")) {
      Crossing cr;
      cr.id = c.at("id").get<int>();
      auto cyc = c.at("cyclic");
      if (cyc.size() != 4)
        fail("NonQuadrivalent", "crossing " + std::to_string(cr.id) + " has degree " +
                                    std::to_string(cyc.size()));
      for (int k = 0; k < 4; ++k) cr.rot[k] = cyc.at(k).get<int>();
      d.crossings.push_back(cr);
    }
    for (const auto& p : j.at("endpoints")) {
      Endpoint e;
      e.id = p.at("id").get<int>();
      e.half_edge = p.at("half_edge").get<int>();
      d.endpoints.push_back(e);
    }
    for (const auto& e : j.at("edges")) {
      DivideEdge de;
      de.id = e.at("id").get<int>();
      de.a = e.at("ends").at(0).get<int>();
      de.b = e.at("ends").at(1).get<int>();
      d.edges.push_back(de);
    }
    for (const auto& b : j.at("branches")) {
      std::vector<int> walk;
      for (const auto& e : b) walk.push_back(e.get<int>());
      d.branches.push_back(walk);
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail("ParseError", e.what());
  }
  return d;
}

Divide validate_divide(const Divide& raw) {
  Divide d = raw;

  // Dart coverage: exactly one vertex slot and one edge slot per dart.
  std::map<Dart, int> vertex_uses, edge_uses;
  for (size_t i = 0; i < d.crossings.size(); ++i) {
    const auto& rot = d.crossings[i].rot;
    std::set<Dart> local(rot.begin(), rot.end());
    if (local.size() != 4)
      fail("NonQuadrivalent", "crossing " + std::to_string(d.crossings[i].id) +
                                  " repeats a half-edge in its rotation");
    for (Dart h : rot) {
      vertex_uses[h]++;
      d.dart_vertex[h] = static_cast<int>(i);
    }
  }
  for (size_t i = 0; i < d.endpoints.size(); ++i) {
    vertex_uses[d.endpoints[i].half_edge]++;
    d.dart_vertex[d.endpoints[i].half_edge] = -static_cast<int>(i) - 1;
  }
  for (size_t i = 0; i < d.edges.size(); ++i) {
    const auto& e = d.edges[i];
    if (e.a == e.b) fail("DanglingHalfEdge", dart_name(e.a) + " paired with itself");
    edge_uses[e.a]++;
    edge_uses[e.b]++;
    d.dart_edge[e.a] = static_cast<int>(i);
    d.dart_edge[e.b] = static_cast<int>(i);
    d.mate[e.a] = e.b;
    d.mate[e.b] = e.a;
  }
  for (const auto& [h, n] : vertex_uses)
    if (n != 1 || !edge_uses.count(h))
      fail("DanglingHalfEdge", dart_name(h) + " not covered exactly once");
  for (const auto& [h, n] : edge_uses)
    if (n != 1 || !vertex_uses.count(h))
      fail("DanglingHalfEdge", dart_name(h) + " not attached exactly once");

  for (const auto& c : d.crossings)
    for (int k = 0; k < 4; ++k) {
      d.rot_next[c.rot[k]] = c.rot[(k + 1) % 4];
      d.rot_prev[c.rot[k]] = c.rot[(k + 3) % 4];
    }

  // Branches: partition of edges into straight endpoint-to-endpoint walks.
  std::map<int, int> edge_cover;
  for (size_t bi = 0; bi < d.branches.size(); ++bi) {
    const auto& walk = d.branches[bi];
    if (walk.empty()) fail("LoopBranch", "branch " + std::to_string(bi) + " is empty");
    std::vector<int> idx;
    for (int eid : walk) {
      int ei = d.edge_index(eid);
      if (ei < 0) fail("DanglingHalfEdge", "branch references unknown edge " + std::to_string(eid));
      idx.push_back(ei);
      edge_cover[ei]++;
      d.edge_branch[ei] = static_cast<int>(bi);
    }
    // Orient the walk: find the dart order so consecutive edges chain.
    // For each consecutive pair, the meeting vertex must be a crossing and the
    // two darts there must be opposite in the rotation.
    auto other_end = [&](int ei, Dart from) {
      return d.edges[ei].a == from ? d.edges[ei].b : d.edges[ei].a;
    };
    // Determine the orientation of the first edge.
    Dart cur_far;  // dart at the far end of the current edge, walk direction
    if (idx.size() == 1) {
      const auto& e = d.edges[idx[0]];
      if (d.dart_vertex.at(e.a) >= 0 || d.dart_vertex.at(e.b) >= 0)
        fail("BranchNotThroughCrossing",
             "single-edge branch " + std::to_string(bi) + " does not join two endpoints");
      cur_far = e.b;
    } else {
      const auto& e0 = d.edges[idx[0]];
      const auto& e1 = d.edges[idx[1]];
      // The shared vertex between edge 0 and edge 1 fixes e0's direction.
      auto shares = [&](Dart x) {
        int v = d.dart_vertex.at(x);
        return v >= 0 && (d.dart_vertex.at(e1.a) == v || d.dart_vertex.at(e1.b) == v);
      };
      if (shares(e0.b))
        cur_far = e0.b;
      else if (shares(e0.a))
        cur_far = e0.a;
      else
        fail("BranchNotThroughCrossing",
             "branch " + std::to_string(bi) + " edges " + std::to_string(walk[0]) + "," +
                 std::to_string(walk[1]) + " do not meet");
      Dart near = other_end(idx[0], cur_far);
      if (d.dart_vertex.at(near) >= 0)
        fail("LoopBranch", "branch " + std::to_string(bi) + " does not start at an endpoint");
      for (size_t k = 1; k < idx.size(); ++k) {
        int v = d.dart_vertex.at(cur_far);
        if (v < 0)
          fail("BranchNotThroughCrossing",
               "branch " + std::to_string(bi) + " hits an endpoint mid-walk");
        Dart expected = d.opposite(cur_far);
        const auto& ek = d.edges[idx[k]];
        Dart entry = (d.dart_edge.at(expected) == idx[k] &&
                      (ek.a == expected || ek.b == expected))
                         ? expected
                         : -1;
        if (entry < 0)
          fail("BranchNotThroughCrossing",
               "branch " + std::to_string(bi) + " turns at crossing " +
                   std::to_string(d.crossings[v].id));
        cur_far = other_end(idx[k], entry);
      }
    }
    if (d.dart_vertex.at(cur_far) >= 0)
      fail("LoopBranch", "branch " + std::to_string(bi) + " does not end at an endpoint");
  }
  for (size_t ei = 0; ei < d.edges.size(); ++ei) {
    auto it = edge_cover.find(static_cast<int>(ei));
    if (it == edge_cover.end() || it->second != 1)
      fail("DanglingHalfEdge",
           "edge " + std::to_string(d.edges[ei].id) + " not covered by exactly one branch");
  }
  // Endpoint count must be twice the branch count.
  if (d.endpoints.size() != 2 * d.branches.size())
    fail("LoopBranch", "endpoint count does not match branch count");

  // Connectivity over edges.
  if (!d.crossings.empty() || !d.endpoints.empty()) {
    std::map<int, std::vector<int>> g;  // vertex key -> neighbors
    auto vkey = [&](Dart h) { return d.dart_vertex.at(h); };
    for (const auto& e : d.edges) {
      g[vkey(e.a)].push_back(vkey(e.b));
      g[vkey(e.b)].push_back(vkey(e.a));
    }
    std::set<int> all;
    for (size_t i = 0; i < d.crossings.size(); ++i) all.insert(static_cast<int>(i));
    for (size_t i = 0; i < d.endpoints.size(); ++i) all.insert(-static_cast<int>(i) - 1);
    if (!all.empty()) {
      std::set<int> seen;
      std::deque<int> q{*all.begin()};
      seen.insert(*all.begin());
      while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int w : g[v])
          if (seen.insert(w).second) q.push_back(w);
      }
      if (seen.size() != all.size()) fail("Disconnected", "divide is not connected");
    }
  }
  return d;
}

// Face tracing over the divide augmented with the disk boundary circle.
// Boundary arcs get synthetic darts. face-next(d) = rot_prev(mate(d)),
// which walks each face with its interior on the left.
std::vector<Region> trace_regions(const Divide& d) {
  // Build the augmented dart system. Synthetic darts use ids below any real
  // ones: pairs (-1000 - 2k, -1000 - 2k - 1) for boundary arc k.
  std::map<Dart, Dart> mate = d.mate;
  std::map<Dart, Dart> prev = d.rot_prev;

  int ne = static_cast<int>(d.endpoints.size());
  std::vector<Dart> arc_fwd(ne), arc_bwd(ne);  // arc k runs endpoint k -> k+1 ccw
  for (int k = 0; k < ne; ++k) {
    arc_fwd[k] = -1000 - 2 * k;
    arc_bwd[k] = -1000 - 2 * k - 1;
    mate[arc_fwd[k]] = arc_bwd[k];
    mate[arc_bwd[k]] = arc_fwd[k];
  }
  // Rotation at endpoint k (ccw): [cw-tangent, ccw-tangent, inward].
  // cw-tangent at endpoint k is arc_bwd[k-1]; ccw-tangent is arc_fwd[k].
  for (int k = 0; k < ne; ++k) {
    Dart in = d.endpoints[k].half_edge;
    Dart cw = arc_bwd[(k + ne - 1) % ne];
    Dart ccw = arc_fwd[k];
    prev[cw] = in;
    prev[ccw] = cw;
    prev[in] = ccw;
  }

  std::set<Dart> pending;
  for (const auto& [h, m] : mate) {
    (void)m;
    pending.insert(h);
  }
  std::vector<Region> out;
  while (!pending.empty()) {
    Dart start = *pending.begin();
    std::vector<Dart> cyc;
    Dart cur = start;
    do {
      pending.erase(cur);
      cyc.push_back(cur);
      cur = prev.at(mate.at(cur));
    } while (cur != start);
    // Outer face: consists entirely of boundary darts; skip it.
    bool all_boundary = true, any_boundary = false;
    for (Dart h : cyc) {
      if (h <= -1000)
        any_boundary = true;
      else
        all_boundary = false;
    }
    if (all_boundary && !cyc.empty() && ne > 0) continue;
    Region r;
    r.id = static_cast<int>(out.size());
    for (Dart h : cyc)
      if (h > -1000) r.cycle.push_back(h);
    r.bounded = !any_boundary;
    for (Dart h : r.cycle) {
      int v = d.dart_vertex.at(h);
      if (v >= 0) r.incident_crossings.insert(v);
      int w = d.dart_vertex.at(d.mate.at(h));
      if (w >= 0) r.incident_crossings.insert(w);
    }
    out.push_back(r);
  }

  // Euler check on the disk.
  long long V = static_cast<long long>(d.crossings.size()) + ne;
  long long E = static_cast<long long>(d.edges.size()) + ne;
  long long F = static_cast<long long>(out.size());
  if (ne == 0) E = static_cast<long long>(d.edges.size());
  if (F - E + V != 1)
    fail("Internal", "Euler check failed: F-E+V = " + std::to_string(F - E + V));
  return out;
}

std::vector<std::pair<int, int>> edge_region_sides(const Divide& d,
                                                   const std::vector<Region>& regions) {
  std::map<Dart, int> face_of;
  for (const auto& r : regions)
    for (Dart h : r.cycle) face_of[h] = r.id;
  std::vector<std::pair<int, int>> sides(d.edges.size(), {-1, -1});
  for (size_t ei = 0; ei < d.edges.size(); ++ei) {
    auto a = face_of.find(d.edges[ei].a);
    auto b = face_of.find(d.edges[ei].b);
    sides[ei] = {a == face_of.end() ? -1 : a->second, b == face_of.end() ? -1 : b->second};
  }
  return sides;
}

void assign_signs(const Divide& d, std::vector<Region>& regions,
                  std::optional<std::pair<int, Sign>> anchor) {
  if (regions.empty()) return;
  int root = -1;
  Sign root_sign = Sign::Plus;
  if (anchor) {
    root = anchor->first;
    root_sign = anchor->second;
    if (root < 0 || root >= static_cast<int>(regions.size()))
      fail("ParseError", "anchor region " + std::to_string(root) + " does not exist");
  } else {
    for (const auto& r : regions)
      if (r.bounded) { root = r.id; break; }
    if (root < 0) root = 0;  // no bounded region (e.g. a single arc, mu = 0)
  }
  auto sides = edge_region_sides(d, regions);
  std::vector<std::vector<int>> adj(regions.size());
  for (auto [a, b] : sides)
    if (a >= 0 && b >= 0) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  std::vector<int> color(regions.size(), 0);
  std::deque<int> q{root};
  color[root] = root_sign == Sign::Plus ? 1 : -1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : adj[v]) {
      if (color[w] == 0) {
        color[w] = -color[v];
        q.push_back(w);
      } else if (color[w] != -color[v]) {
        fail("NotTwoColorable", "regions " + std::to_string(v) + " and " + std::to_string(w));
      }
    }
  }
  for (auto& r : regions) {
    if (color[r.id] == 0) color[r.id] = 1;  // isolated region component (not expected)
    r.sign = color[r.id] > 0 ? Sign::Plus : Sign::Minus;
    r.has_sign = true;
  }
}

int milnor_number(const Divide& d) {
  return 2 * static_cast<int>(d.crossings.size()) - static_cast<int>(d.branches.size()) + 1;
}

bool AGammaDiagram::has_edge(int a, int b) const { return edge_id(a, b) >= 0; }

int AGammaDiagram::edge_id(int a, int b) const {
  if (a > b) std::swap(a, b);
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].first == a && edges[i].second == b) return static_cast<int>(i);
  return -1;
}

AGammaDiagram build_agamma(const Divide& d, const std::vector<Region>& regions) {
  for (const auto& r : regions)
    if (r.bounded && !r.has_sign) fail("Internal", "signs not assigned");

  AGammaDiagram ag;
  // Collect vertices: minus regions, crossings, plus regions; ties by origin id.
  struct Pre {
    VType t;
    bool from_crossing;
    int origin;
  };
  std::vector<Pre> pre;
  for (const auto& r : regions)
    if (r.bounded && r.sign == Sign::Minus) pre.push_back({VType::Minus, false, r.id});
  for (const auto& c : d.crossings) pre.push_back({VType::Zero, true, c.id});
  for (const auto& r : regions)
    if (r.bounded && r.sign == Sign::Plus) pre.push_back({VType::Plus, false, r.id});
  auto rank = [](VType t) { return t == VType::Minus ? 0 : (t == VType::Zero ? 1 : 2); };
  std::stable_sort(pre.begin(), pre.end(), [&](const Pre& a, const Pre& b) {
    if (rank(a.t) != rank(b.t)) return rank(a.t) < rank(b.t);
    return a.origin < b.origin;
  });
  std::map<int, int> crossing_vertex;  // crossing index -> ag vertex id
  std::map<int, int> region_vertex;    // region id -> ag vertex id
  for (size_t i = 0; i < pre.size(); ++i) {
    AGVertex v;
    v.id = static_cast<int>(i);
    v.type = pre[i].t;
    v.from_crossing = pre[i].from_crossing;
    v.origin = pre[i].origin;
    ag.vertices.push_back(v);
    if (pre[i].from_crossing)
      crossing_vertex[d.crossing_index(pre[i].origin)] = v.id;
    else
      region_vertex[pre[i].origin] = v.id;
  }

  std::map<std::pair<int, int>, int> mult;
  // 0 vertex -- region vertex: crossing on the region's closure.
  for (const auto& r : regions) {
    if (!r.bounded) continue;
    int rv = region_vertex.at(r.id);
    std::map<int, int> seen;
    for (Dart h : r.cycle) {
      int tail = d.dart_vertex.at(h);
      if (tail >= 0) seen[tail]++;
    }
    for (auto [ci, n] : seen) {
      auto key = std::minmax(crossing_vertex.at(ci), rv);
      mult[{key.first, key.second}] += n;
    }
  }
  // plus region -- minus region: shared divide edge with both ends crossings.
  auto sides = edge_region_sides(d, regions);
  for (size_t ei = 0; ei < d.edges.size(); ++ei) {
    auto [ra, rb] = sides[ei];
    if (ra < 0 || rb < 0 || ra == rb) continue;
    const Region& A = regions[ra];
    const Region& B = regions[rb];
    if (!A.bounded || !B.bounded) continue;
    if (A.sign == B.sign) continue;  // checkerboard violation caught elsewhere
    bool internal = d.dart_vertex.at(d.edges[ei].a) >= 0 && d.dart_vertex.at(d.edges[ei].b) >= 0;
    if (!internal) continue;
    auto key = std::minmax(region_vertex.at(ra), region_vertex.at(rb));
    mult[{key.first, key.second}] += 1;
  }
  for (const auto& [key, n] : mult) {
    ag.edges.push_back(key);
    if (n > 1) ag.collapsed_parallel.push_back({key.first, key.second, n});
  }
  std::sort(ag.edges.begin(), ag.edges.end());
  ag.adj.assign(ag.vertices.size(), {});
  for (auto [a, b] : ag.edges) {
    ag.adj[a].push_back(b);
    ag.adj[b].push_back(a);
  }
  for (auto& v : ag.adj) std::sort(v.begin(), v.end());
  return ag;
}

std::set<int> depth0_seeds(const Divide& d, const std::vector<Region>& regions,
                           const AGammaDiagram& ag) {
  std::set<int> unbounded;
  for (const auto& r : regions)
    if (!r.bounded) unbounded.insert(r.id);

  std::set<int> crossings_on_unbounded;  // crossing indices
  for (const auto& r : regions) {
    if (r.bounded) continue;
    for (int ci : r.incident_crossings) crossings_on_unbounded.insert(ci);
  }
  std::set<int> regions_on_unbounded;  // region ids sharing an edge with unbounded
  auto sides = edge_region_sides(d, regions);
  for (auto [a, b] : sides) {
    if (a < 0 || b < 0) continue;
    if (unbounded.count(a) && !unbounded.count(b)) regions_on_unbounded.insert(b);
    if (unbounded.count(b) && !unbounded.count(a)) regions_on_unbounded.insert(a);
  }

  std::set<int> seeds;
  for (const auto& v : ag.vertices) {
    if (v.from_crossing) {
      if (crossings_on_unbounded.count(d.crossing_index(v.origin))) seeds.insert(v.id);
    } else {
      if (regions_on_unbounded.count(v.origin)) seeds.insert(v.id);
    }
  }
  return seeds;
}

void compute_depths(AGammaDiagram& ag, const std::set<int>& seeds) {
  int n = ag.mu();
  for (auto& v : ag.vertices) v.depth = -1;
  std::vector<int> frontier;
  for (int s : seeds) {
    ag.vertices[s].depth = 0;
    frontier.push_back(s);
  }
  int assigned = static_cast<int>(frontier.size());
  int depth = 0;
  while (assigned < n) {
    std::vector<int> next;
    for (int v : frontier)
      for (int w : ag.adj[v])
        if (ag.vertices[w].depth < 0) {
          ag.vertices[w].depth = depth + 1;
          next.push_back(w);
        }
    if (next.empty())
      fail("PeelingStalled", std::to_string(n - assigned) + " vertices unreachable at depth " +
                                 std::to_string(depth + 1));
    assigned += static_cast<int>(next.size());
    frontier = std::move(next);
    ++depth;
  }
}

std::vector<std::vector<int>> branch_pair_multiplicities(const Divide& d) {
  int r = static_cast<int>(d.branches.size());
  std::vector<std::vector<int>> nu(r, std::vector<int>(r, 0));
  for (const auto& c : d.crossings) {
    // The two strands through this crossing: {rot[0], rot[2]} and {rot[1], rot[3]}.
    int b1 = d.edge_branch.at(d.dart_edge.at(c.rot[0]));
    int b2 = d.edge_branch.at(d.dart_edge.at(c.rot[1]));
    if (b1 != b2) {
      nu[b1][b2]++;
      nu[b2][b1]++;
    }
  }
  return nu;
}

std::string agamma_to_json(const AGammaDiagram& ag) {
  json j;
  j["vertices"] = json::array();
  for (const auto& v : ag.vertices) {
    j["vertices"].push_back({{"id", v.id},
                             {"type", to_string(v.type)},
                             {"origin", (v.from_crossing ? "c" : "r") + std::to_string(v.origin)},
                             {"depth", v.depth}});
  }
  j["edges"] = json::array();
  for (auto [a, b] : ag.edges) j["edges"].push_back({a, b});
  return j.dump(2);
}

std::string agamma_to_dot(const AGammaDiagram& ag) {
  std::ostringstream os;
  os << "graph agamma {\n";
  for (const auto& v : ag.vertices) {
    const char* shape =
        v.type == VType::Zero ? "circle" : (v.type == VType::Plus ? "diamond" : "box");
    os << "  v" << v.id << " [shape=" << shape << ", label=\"" << to_string(v.type) << v.id
       << "\\nd" << v.depth << "\"];\n";
  }
  for (auto [a, b] : ag.edges) os << "  v" << a << " -- v" << b << ";\n";
  os << "}\n";
  return os.str();
}

// --- util.hpp implementations kept here to avoid a separate TU ---

std::vector<std::int64_t> solve_upper_unit(const IntMat& u, const std::vector<std::int64_t>& b) {
  int n = u.size();
  std::vector<std::int64_t> x(n, 0);
  for (int i = n - 1; i >= 0; --i) {
    std::int64_t s = b[i];
    for (int j = i + 1; j < n; ++j) s -= u(i, j) * x[j];
    std::int64_t d = u(i, i);
    if (d != 1 && d != -1) fail("SingularPairing", "non-unit pivot");
    x[i] = s * d;  // d is +-1
  }
  return x;
}

IntMat solve_upper_unit(const IntMat& u, const IntMat& b) {
  int n = u.size();
  IntMat x(n);
  for (int c = 0; c < n; ++c) {
    std::vector<std::int64_t> col(n);
    for (int r = 0; r < n; ++r) col[r] = b(r, c);
    auto sol = solve_upper_unit(u, col);
    for (int r = 0; r < n; ++r) x(r, c) = sol[r];
  }
  return x;
}

// Faddeev-LeVerrier: M_1 = M, c_{n-k} = -tr(M_k)/k, M_{k+1} = M(M_k + c_{n-k} I).
std::vector<std::int64_t> char_poly(const IntMat& m) {
  int n = m.size();
  std::vector<std::int64_t> c(n + 1, 0);
  c[n] = 1;
  IntMat mcur = m;
  for (int k = 1; k <= n; ++k) {
    std::int64_t t = mcur.trace();
    if (t % k != 0 && (-t) % k != 0) fail("Internal", "char_poly divisibility");
    std::int64_t ck = -t / k;
    c[n - k] = ck;
    if (k < n) {
      IntMat adj = mcur;
      for (int i = 0; i < n; ++i) adj(i, i) += ck;
      mcur = m * adj;
    }
  }
  return c;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace dividekit
