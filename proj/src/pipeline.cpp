#include "dividekit/pipeline.hpp"

#include <sstream>

#include "dividekit/arcsets.hpp"
#include "dividekit/homology.hpp"
#include "dividekit/surface.hpp"
#include "json.hpp"

namespace dividekit {

std::string RunReport::to_json() const {
  nlohmann::json j;
  j["input_digest"] = input_digest;
  j["overall"] = overall ? "pass" : "fail";
  j["checks"] = nlohmann::json::array();
  for (const auto& r : records)
    j["checks"].push_back(
        {{"name", r.name}, {"verdict", r.pass ? "pass" : "fail"}, {"details", r.details}});
  return j.dump(2);
}

std::string RunReport::to_text() const {
  std::ostringstream os;
  os << "input digest " << input_digest << "\n";
  for (const auto& r : records) {
    os << (r.pass ? "[pass] " : "[FAIL] ") << r.name;
    if (!r.details.empty()) os << " - " << r.details;
    os << "\n";
  }
  os << "overall: " << (overall ? "pass" : "fail") << "\n";
  return os.str();
}

RunReport run_pipeline(const std::string& divide_json, const PipelineOptions& opts) {
  RunReport rep;
  rep.input_digest = fnv1a_hex(divide_json);
  auto record = [&](const std::string& name, bool pass, const std::string& details = "") {
    rep.records.push_back({name, pass, details});
    return pass;
  };

  Divide d;
  try {
    d = validate_divide(parse_divide(divide_json));
    record("validate", true,
           std::to_string(d.crossings.size()) + " crossings, " +
               std::to_string(d.branches.size()) + " branches");
  } catch (const Error& e) {
    record("validate", false, e.what());
    rep.input_error = true;
    rep.overall = false;
    return rep;
  }

  bool ok = true;
  try {
    auto regions = trace_regions(d);
    assign_signs(d, regions, opts.anchor);
    int bounded = 0;
    for (const auto& r : regions) bounded += r.bounded ? 1 : 0;
    ok &= record("regions", true,
                 std::to_string(regions.size()) + " regions, " + std::to_string(bounded) +
                     " bounded");

    int mu = milnor_number(d);
    ok &= record("milnor_number", mu >= 0, "mu = " + std::to_string(mu));

    auto ag = build_agamma(d, regions);
    ok &= record("diagram", ag.mu() == mu,
                 std::to_string(ag.mu()) + " vertices, " + std::to_string(ag.edges.size()) +
                     " edges" +
                     (ag.collapsed_parallel.empty() ? ""
                                                    : ", parallel incidences collapsed"));

    compute_depths(ag, depth0_seeds(d, regions, ag));
    int maxdep = 0;
    for (const auto& v : ag.vertices) maxdep = std::max(maxdep, v.depth);
    ok &= record("depths", true, "max depth " + std::to_string(maxdep));

    auto s = intersection_matrix(ag);
    if (opts.tamper_s && s.size() > 1) s(0, 1) += 1;  // fault injection
    MatrixBundle bundle;
    bundle.mu = s.size();
    bundle.S = s;
    bundle.L = seifert_matrix(s);
    bundle.H = solve_upper_unit(bundle.L.transpose(), bundle.L);
    bundle.P = IntMat(bundle.mu);
    for (int i = 0; i < bundle.mu; ++i)
      for (int j = 0; j < bundle.mu; ++j) bundle.P(i, j) = -bundle.L(i, j);

    bool anti = true, split = true;
    for (int i = 0; i < bundle.mu; ++i)
      for (int j = 0; j < bundle.mu; ++j) {
        anti &= s(i, j) == -s(j, i);
        split &= s(i, j) == bundle.L(j, i) - bundle.L(i, j);
      }
    ok &= record("matrix_identities", anti && split,
                 std::string("S antisymmetric ") + (anti ? "ok" : "FAIL") + ", S = L^T - L " +
                     (split ? "ok" : "FAIL"));
    bool triple = monodromy_matrix(s) == bundle.H &&
                  monodromy_from_variation(s, bundle.P) == bundle.H;
    ok &= record("triple_agreement", triple,
                 triple ? "twist product = (L^T)^{-1}L = I - (P^T)^{-1}S^T"
                        : "monodromy routes disagree");
    bool lefschetz = bundle.mu <= 1 || bundle.H.trace() == 1;
    ok &= record("lefschetz_trace", lefschetz,
                 "trace(H) = " + std::to_string(bundle.H.trace()));

    auto paths = good_paths(ag);
    bool monotone = true;
    for (const auto& p : paths)
      for (auto [a, b] : p.edges) monotone &= ag.vertices[a].depth < ag.vertices[b].depth;
    ok &= record("good_paths", monotone, std::to_string(paths.size()) + " paths");

    std::vector<Arcset> coll;
    for (const auto& p : paths) coll.push_back(build_arcset(ag, p));
    int comps = 0;
    for (const auto& a : coll) comps += static_cast<int>(a.components.size());
    ok &= record("arcsets", true, std::to_string(comps) + " basic arcs");

    auto ar = check_adapted(coll, s);
    ok &= record("adapted", ar.adapted,
                 ar.adapted ? "pairing matrix is unitriangular with the required lower part"
                            : std::to_string(ar.violations.size()) + " violations");

    bool telescoped = true;
    for (const auto& a : coll) {
      auto tr = variation_of_arcset(ag, a);
      telescoped &= tr.ok;
    }
    ok &= record("telescoping", telescoped, "variation images are -[V] for every vertex");

    bool chains = true;
    for (const auto& a : coll) chains &= a.pattern_links.size() + 1 == a.components.size();
    ok &= record("linear_orders", chains, "every arcset pattern is a chain");

    auto er = check_exceptional(coll, s);
    ok &= record("exceptional", er.exceptional,
                 er.exceptional ? er.reasons.empty() ? "" : er.reasons.back()
                                : "conditions violated");

    auto surf = CombSurface::build(d, regions);
    int r = static_cast<int>(d.branches.size());
    int dd = static_cast<int>(d.crossings.size());
    bool inv = surf.euler_characteristic() == r - 2 * dd &&
               surf.boundary_components() == r &&
               mu == 2 * surf.genus() + r - 1;
    ok &= record("surface_invariants", inv,
                 "chi " + std::to_string(surf.euler_characteristic()) + ", boundary " +
                     std::to_string(surf.boundary_components()) + ", genus " +
                     std::to_string(surf.genus()));
    auto walks = surf.vanishing_cycle_walks(ag);
    bool match = true;
    for (int i = 0; i < ag.mu() && match; ++i)
      for (int j = 0; j < ag.mu() && match; ++j)
        if (i != j) match = surf.algebraic_intersection(walks[i], walks[j]) == s(i, j);
    ok &= record("surface_intersections", match,
                 match ? "walk crossings match the diagram form entry-exact"
                       : "walk crossings disagree with the diagram form");
  } catch (const Error& e) {
    record(std::string("error:") + e.code, false, e.what());
    ok = false;
  }

  rep.overall = ok;
  return rep;
}

}  // namespace dividekit
