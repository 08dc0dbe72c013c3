#include "dividekit/arcsets.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace dividekit {

const char* to_string(ArcKind k) {
  switch (k) {
    case ArcKind::Kp0: return "K+0";
    case ArcKind::KpM: return "K+-";
    case ArcKind::K0M: return "K0-";
    case ArcKind::K0p: return "K0+";
    case ArcKind::KMp: return "K-+";
    case ArcKind::KM0: return "K-0";
    case ArcKind::Kp: return "K+";
    case ArcKind::Km: return "K-";
    default: return "K0";
  }
}

bool kind_is_reversal(ArcKind k) {
  return k == ArcKind::K0p || k == ArcKind::KMp || k == ArcKind::KM0;
}

std::set<int> closed_neighborhood(const AGammaDiagram& ag, int v) {
  std::set<int> n(ag.adj[v].begin(), ag.adj[v].end());
  n.insert(v);
  return n;
}

RelevantSet relevant_vertices(const AGammaDiagram& ag, int a, int b) {
  RelevantSet rs;
  if (b < 0) {
    // Vertex anchor: must be a depth-0 sign vertex.
    const AGVertex& v = ag.vertices.at(a);
    if (v.type == VType::Zero) fail("BadAnchor", "vertex " + std::to_string(a) + " has type 0");
    if (v.depth != 0) fail("BadAnchor", "vertex " + std::to_string(a) + " has depth " +
                                            std::to_string(v.depth));
    rs.edge_anchor = false;
    rs.a = a;
    if (v.type == VType::Plus)
      rs.members = closed_neighborhood(ag, a);
    else
      rs.members = {a};
    return rs;
  }
  if (!ag.has_edge(a, b)) fail("BadAnchor", "no edge between " + std::to_string(a) + " and " +
                                                std::to_string(b));
  rs.edge_anchor = true;
  rs.a = a;
  rs.b = b;
  VType ta = ag.vertices[a].type, tb = ag.vertices[b].type;
  auto is = [&](VType x, VType y) {
    return (ta == x && tb == y) || (ta == y && tb == x);
  };
  int vp = ta == VType::Plus ? a : b;
  int vm = ta == VType::Minus ? a : b;
  int v0 = ta == VType::Zero ? a : b;
  if (is(VType::Plus, VType::Zero)) {
    auto np = closed_neighborhood(ag, vp);
    auto n0 = closed_neighborhood(ag, v0);
    for (int v : np)
      if (!n0.count(v)) rs.members.insert(v);
    rs.members.insert(vp);
  } else if (is(VType::Plus, VType::Minus)) {
    auto np = closed_neighborhood(ag, vp);
    np.erase(vm);
    rs.members = np;
  } else if (is(VType::Zero, VType::Minus)) {
    auto n0 = closed_neighborhood(ag, v0);
    auto nm = closed_neighborhood(ag, vm);
    for (int v : n0)
      if (!nm.count(v)) rs.members.insert(v);
    rs.members.insert(v0);
  } else {
    fail("BadAnchor", "same-type edge anchor");
  }
  return rs;
}

namespace {

ArcKind edge_kind(VType s, VType t) {
  if (s == VType::Plus && t == VType::Zero) return ArcKind::Kp0;
  if (s == VType::Plus && t == VType::Minus) return ArcKind::KpM;
  if (s == VType::Zero && t == VType::Minus) return ArcKind::K0M;
  if (s == VType::Zero && t == VType::Plus) return ArcKind::K0p;
  if (s == VType::Minus && t == VType::Plus) return ArcKind::KMp;
  if (s == VType::Minus && t == VType::Zero) return ArcKind::KM0;
  fail("KindMismatch", "no edge kind for this type pair");
}

ArcKind vertex_kind(VType t) {
  switch (t) {
    case VType::Plus: return ArcKind::Kp;
    case VType::Minus: return ArcKind::Km;
    default: return ArcKind::K0;
  }
}

}  // namespace

BasicArc basic_arc(const AGammaDiagram& ag, ArcKind kind, int a, int b) {
  BasicArc arc;
  arc.kind = kind;
  arc.anchor_a = a;
  arc.anchor_b = b;
  arc.pairing.assign(ag.mu(), 0);
  if (kind == ArcKind::Kp || kind == ArcKind::Km) {
    const AGVertex& v = ag.vertices.at(a);
    if ((kind == ArcKind::Kp) != (v.type == VType::Plus))
      fail("KindMismatch", std::string(to_string(kind)) + " at vertex of type " +
                               to_string(v.type));
    auto rs = relevant_vertices(ag, a);
    for (int m : rs.members) arc.pairing[m] = 1;
    return arc;
  }
  if (kind == ArcKind::K0) {
    const AGVertex& v = ag.vertices.at(a);
    if (v.type != VType::Zero) fail("KindMismatch", "K0 at non-0 vertex");
    if (v.depth != 0) fail("BadAnchor", "K0 at vertex of depth " + std::to_string(v.depth));
    arc.pairing[a] = 1;
    for (int w : ag.adj[a])
      if (ag.vertices[w].type == VType::Minus) arc.pairing[w] = 1;
    return arc;
  }
  // Edge kinds. (a, b) is the traversal order s -> t.
  VType ts = ag.vertices.at(a).type, tt = ag.vertices.at(b).type;
  if (edge_kind(ts, tt) != kind)
    fail("KindMismatch", std::string(to_string(kind)) + " on edge of types " + to_string(ts) +
                             "," + to_string(tt));
  auto rs = relevant_vertices(ag, a, b);
  int val = kind_is_reversal(kind) ? 1 : -1;
  for (int m : rs.members) arc.pairing[m] = val;
  return arc;
}

std::vector<GoodPath> good_paths(const AGammaDiagram& ag) {
  int n = ag.mu();
  int max_depth = 0;
  for (const auto& v : ag.vertices) {
    if (v.depth < 0) fail("Internal", "depths not computed");
    max_depth = std::max(max_depth, v.depth);
  }
  std::vector<GoodPath> paths(n);
  for (int dep = 0; dep <= max_depth; ++dep) {
    for (int v = 0; v < n; ++v) {
      if (ag.vertices[v].depth != dep) continue;
      paths[v].target = v;
      if (dep == 0) continue;
      VType tv = ag.vertices[v].type;
      int parent = -1;
      for (int w : ag.adj[v]) {
        if (ag.vertices[w].depth != dep - 1) continue;
        VType tw = ag.vertices[w].type;
        bool ok = (tv == VType::Plus && tw == VType::Minus) ||
                  (tv == VType::Minus && tw == VType::Plus) ||
                  (tv == VType::Zero && tw != VType::Zero);
        if (ok) { parent = w; break; }  // adj is sorted: lowest id wins
      }
      if (parent < 0)
        fail("NoEligibleParent", "vertex " + std::to_string(v) + " at depth " +
                                     std::to_string(dep));
      paths[v] = paths[parent];
      paths[v].target = v;
      paths[v].edges.push_back({parent, v});
    }
  }
  return paths;
}

Arcset build_arcset(const AGammaDiagram& ag, const GoodPath& path) {
  Arcset as;
  as.path = path;
  int m = path.length();
  const VType stype = ag.vertices.at(path.source()).type;

  if (m == 0) {
    as.components.push_back(basic_arc(ag, vertex_kind(stype), path.target));
  } else {
    if (ag.vertices[path.source()].depth != 0)
      fail("CaseFallthrough", "path source has nonzero depth");
    as.components.push_back(basic_arc(ag, vertex_kind(stype), path.source()));
    for (auto [s, t] : path.edges)
      as.components.push_back(
          basic_arc(ag, edge_kind(ag.vertices[s].type, ag.vertices[t].type), s, t));
  }

  // Grouping: with a + source the depth-0 arc pairs with the first edge arc,
  // with a - source it stands alone; the remaining edge arcs pair up in order.
  int ncomp = static_cast<int>(as.components.size());
  std::vector<std::vector<int>> groups;
  if (m == 0) {
    groups.push_back({0});
  } else if (stype == VType::Plus) {
    groups.push_back({0, 1});
    int i = 2;
    while (i + 1 < ncomp) { groups.push_back({i, i + 1}); i += 2; }
    if (i < ncomp) groups.push_back({i});
  } else if (stype == VType::Minus) {
    groups.push_back({0});
    int i = 1;
    while (i + 1 < ncomp) { groups.push_back({i, i + 1}); i += 2; }
    if (i < ncomp) groups.push_back({i});
  } else {
    fail("CaseFallthrough", "path source has type 0");
  }

  as.aggregate.assign(ag.mu(), 0);
  for (const auto& g : groups) {
    ArcsetGroup ag_;
    ag_.comps = g;
    ag_.contribution.assign(ag.mu(), 0);
    std::ostringstream shape;
    shape << "(";
    for (size_t k = 0; k < g.size(); ++k) {
      const BasicArc& c = as.components[g[k]];
      for (int j = 0; j < ag.mu(); ++j) ag_.contribution[j] += c.pairing[j];
      shape << (k ? " | " : "") << to_string(c.kind);
    }
    shape << ")";
    ag_.shape = shape.str();
    for (int j = 0; j < ag.mu(); ++j) as.aggregate[j] += ag_.contribution[j];
    as.groups.push_back(std::move(ag_));
  }

  // Linear order: backward-kind components by descending edge index, the
  // depth-0 arc, then forward-kind components ascending.
  if (m == 0) {
    as.linear_order = {0};
  } else {
    std::vector<int> left, right;
    for (int i = 1; i < ncomp; ++i) {
      ArcKind k = as.components[i].kind;
      if (k == ArcKind::KMp || k == ArcKind::KM0)
        left.push_back(i);
      else if (k == ArcKind::KpM || k == ArcKind::Kp0)
        right.push_back(i);
      else
        fail("CaseFallthrough", "unexpected edge kind in good-path arcset");
    }
    std::sort(left.rbegin(), left.rend());
    std::sort(right.begin(), right.end());
    as.linear_order = left;
    as.linear_order.push_back(0);
    as.linear_order.insert(as.linear_order.end(), right.begin(), right.end());
  }
  for (size_t i = 0; i + 1 < as.linear_order.size(); ++i)
    as.pattern_links.push_back({as.linear_order[i], as.linear_order[i + 1], -1});
  return as;
}

AdaptedReport check_adapted(const std::vector<Arcset>& collection, const IntMat& s) {
  AdaptedReport rep;
  int n = s.size();
  if (static_cast<int>(collection.size()) != n) fail("Internal", "collection size != mu");
  rep.adapted = true;
  // Rows are taken in the order given; the canonical collection lists the
  // arcset of basis vertex j at position j.
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      std::int64_t got = collection[j].aggregate[i];
      std::int64_t want = i == j ? 1 : (i < j ? s(j, i) : 0);
      if (got != want) {
        rep.adapted = false;
        rep.violations.push_back({j, i, got, want});
      }
    }
  }
  return rep;
}

TelescopeReport variation_of_arcset(const AGammaDiagram& ag, const Arcset& aset) {
  TelescopeReport tr;
  tr.total.assign(ag.mu(), 0);
  for (const auto& c : aset.components) {
    AbsClass cls(ag.mu(), 0);
    switch (c.kind) {
      case ArcKind::Kp:
      case ArcKind::Km:
      case ArcKind::K0:
        cls[c.anchor_a] = -1;
        break;
      default:
        cls[c.anchor_a] = 1;
        cls[c.anchor_b] = -1;
        break;
    }
    for (int j = 0; j < ag.mu(); ++j) tr.total[j] += cls[j];
    tr.partial_sums.push_back(tr.total);
  }
  AbsClass want(ag.mu(), 0);
  want[aset.path.target] = -1;
  tr.ok = tr.total == want;
  if (!tr.ok)
    fail("TelescopeBroken", "arcset for vertex " + std::to_string(aset.path.target));
  return tr;
}

ExceptionalReport check_exceptional(const std::vector<Arcset>& collection, const IntMat& s) {
  ExceptionalReport rep;
  auto ar = check_adapted(collection, s);
  rep.adapted = ar.adapted;
  int n = s.size();
  rep.upper_zero = true;
  rep.diagonal_one = true;
  for (int i = 0; i < n && i < static_cast<int>(collection.size()); ++i) {
    for (int j = 0; j < n; ++j) {
      std::int64_t v = collection[i].aggregate[j];
      if (i < j && v != 0) {
        rep.upper_zero = false;
        rep.reasons.push_back("K_" + std::to_string(i) + " . V_" + std::to_string(j) + " = " +
                              std::to_string(v) + " != 0");
      }
      if (i == j && v != 1) {
        rep.diagonal_one = false;
        rep.reasons.push_back("K_" + std::to_string(i) + " . V_" + std::to_string(i) + " = " +
                              std::to_string(v) + " != 1");
      }
    }
  }
  rep.linear_ok = true;
  for (const auto& a : collection) {
    if (a.pattern_links.size() + 1 != a.components.size()) {
      rep.linear_ok = false;
      rep.reasons.push_back("arcset " + std::to_string(a.path.target) + " pattern not a chain");
    }
  }
  rep.exceptional = rep.upper_zero && rep.diagonal_one && rep.linear_ok;
  if (rep.exceptional)
    rep.reasons.push_back(
        "orientation-reversed collection is exceptional; arcs of distinct arcsets are taken "
        "disjoint (common basic arcs replaced by parallel copies)");
  return rep;
}

std::string arcset_to_json(const AGammaDiagram& ag, const Arcset& aset,
                           const AdaptedReport& ar, const ExceptionalReport& er,
                           const TelescopeReport& tr) {
  nlohmann::json j;
  j["target"] = aset.path.target;
  j["path"] = nlohmann::json::array();
  for (auto [a, b] : aset.path.edges) j["path"].push_back(ag.edge_id(a, b));
  j["components"] = nlohmann::json::array();
  for (const auto& c : aset.components) {
    nlohmann::json cj;
    cj["kind"] = to_string(c.kind);
    cj["anchor"] = c.anchor_b < 0 ? nlohmann::json(c.anchor_a)
                                  : nlohmann::json({c.anchor_a, c.anchor_b});
    cj["pairing"] = c.pairing;
    j["components"].push_back(cj);
  }
  j["linear_order"] = aset.linear_order;
  j["aggregate_pairing"] = aset.aggregate;
  j["certificates"] = {{"adapted", ar.adapted},
                       {"exceptional", er.exceptional},
                       {"telescoping", tr.ok}};
  return j.dump(2);
}

}  // namespace dividekit
