#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dividekit/arcsets.hpp"
#include "dividekit/divide.hpp"
#include "dividekit/fixtures.hpp"
#include "dividekit/homology.hpp"
#include "dividekit/kpq.hpp"
#include "dividekit/pipeline.hpp"
#include "dividekit/surface.hpp"
#include "dividekit/winding.hpp"
#include "json.hpp"

using namespace dividekit;

namespace {

// Exit codes: 0 ok, 1 input error, 2 check failure, 3 internal inconsistency.
int classify(const Error& e) {
  static const std::set<std::string> internal = {
      "Internal",        "GluingMismatch", "SingularPairing", "PeelingStalled",
      "NotTwoColorable", "TelescopeBroken", "CaseFallthrough", "UnresolvedOverlap",
      "OpenRegionWalk"};
  return internal.count(e.code) ? 3 : 1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("ParseError", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) fail("ParseError", "cannot write " + out_path);
  out << text;
}

struct DivideInput {
  std::string in_path, fixture;
  std::string anchor;

  void attach(CLI::App* cmd) {
    cmd->add_option("--in", in_path, "divide JSON file");
    cmd->add_option("--fixture", fixture, "built-in divide name");
    cmd->add_option("--anchor", anchor, "REGION=SIGN, e.g. 3=+");
  }
  std::string text() const {
    if (!fixture.empty()) return fixture_json(fixture);
    if (in_path.empty()) fail("ParseError", "need --in or --fixture");
    return slurp(in_path);
  }
  std::optional<std::pair<int, Sign>> anchor_opt() const {
    if (anchor.empty()) return std::nullopt;
    auto eq = anchor.find('=');
    if (eq == std::string::npos) fail("ParseError", "anchor format is REGION=SIGN");
    int region = std::stoi(anchor.substr(0, eq));
    std::string s = anchor.substr(eq + 1);
    if (s != "+" && s != "-") fail("ParseError", "anchor sign must be + or -");
    return std::pair{region, s == "+" ? Sign::Plus : Sign::Minus};
  }
};

struct BuiltDivide {
  Divide d;
  std::vector<Region> regions;
  AGammaDiagram ag;
};

BuiltDivide build_all(const DivideInput& input) {
  BuiltDivide b;
  b.d = validate_divide(parse_divide(input.text()));
  b.regions = trace_regions(b.d);
  assign_signs(b.d, b.regions, input.anchor_opt());
  b.ag = build_agamma(b.d, b.regions);
  compute_depths(b.ag, depth0_seeds(b.d, b.regions, b.ag));
  return b;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"divide toolkit: diagrams, matrices, arcsets, surfaces, winding numbers"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string out_path, format = "text";
  app.add_option("--out", out_path, "output file (default stdout)")->configurable(false);
  app.add_option("--format", format, "json|text|dot")->configurable(false);
  double tol = 1e-6;
  app.add_option("--tol", tol, "numeric tolerance (winding checks)");

  DivideInput din;

  auto* cmd_agamma = app.add_subcommand("agamma", "typed diagram of a divide");
  din.attach(cmd_agamma);
  auto* cmd_depth = app.add_subcommand("depth", "vertex depth table");
  din.attach(cmd_depth);
  auto* cmd_matrices = app.add_subcommand("matrices", "intersection/Seifert/monodromy bundle");
  din.attach(cmd_matrices);
  auto* cmd_paths = app.add_subcommand("paths", "good paths for every vertex");
  din.attach(cmd_paths);
  auto* cmd_arcsets = app.add_subcommand("arcsets", "arcsets with certificates");
  din.attach(cmd_arcsets);
  auto* cmd_verify = app.add_subcommand("verify", "all certificates; exit 0 iff they pass");
  din.attach(cmd_verify);
  auto* cmd_surface = app.add_subcommand("surface", "fiber surface model report");
  din.attach(cmd_surface);
  bool surface_report_flag = false;
  cmd_surface->add_flag("--report", surface_report_flag, "print invariants and verdicts");

  auto* cmd_winding = app.add_subcommand("winding", "winding number of a planar curve");
  std::string curve_path, field_spec = "constant:1,0", grid_path;
  cmd_winding->add_option("--curve", curve_path, "curve JSON file")->required();
  cmd_winding->add_option("--field", field_spec, "constant:a,b | rotational | hamiltonian:<poly>");
  cmd_winding->add_option("--field-grid", grid_path, "sampled grid field JSON");

  auto* cmd_kpq = app.add_subcommand("kpq", "bipartite spine model");
  int kp = 0, kq = 0;
  bool kpq_report = false;
  cmd_kpq->add_option("--p", kp)->required();
  cmd_kpq->add_option("--q", kq)->required();
  cmd_kpq->add_flag("--report", kpq_report);

  auto* cmd_coherence = app.add_subcommand("coherence", "boundary winding bookkeeping");
  long long chi = 0;
  std::string assign;
  cmd_coherence->add_option("--chi", chi)->required();
  cmd_coherence->add_option("--assign", assign, "comma list; one entry may be x")->required();

  auto* cmd_fixtures = app.add_subcommand("fixtures", "list or emit built-in inputs");
  bool fx_list = false;
  std::string fx_emit;
  cmd_fixtures->add_flag("--list", fx_list);
  cmd_fixtures->add_option("--emit", fx_emit, "fixture name");

  auto* cmd_pipeline = app.add_subcommand("pipeline", "full verification run with report");
  din.attach(cmd_pipeline);
  bool tamper = false;
  cmd_pipeline->add_flag("--tamper-s", tamper, "fault injection: corrupt the intersection form");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_agamma) {
      auto b = build_all(din);
      if (format == "dot")
        emit(agamma_to_dot(b.ag), out_path);
      else
        emit(agamma_to_json(b.ag), out_path);
      return 0;
    }
    if (*cmd_depth) {
      auto b = build_all(din);
      std::ostringstream os;
      for (const auto& v : b.ag.vertices)
        os << "v" << v.id << " type " << to_string(v.type) << " origin "
           << (v.from_crossing ? "crossing " : "region ") << v.origin << " depth " << v.depth
           << "\n";
      emit(os.str(), out_path);
      return 0;
    }
    if (*cmd_matrices) {
      auto b = build_all(din);
      auto bundle = build_bundle(b.ag);
      emit(format == "json" ? bundle_to_json(bundle) : bundle_report_text(bundle), out_path);
      return 0;
    }
    if (*cmd_paths) {
      auto b = build_all(din);
      auto paths = good_paths(b.ag);
      std::ostringstream os;
      for (const auto& p : paths) {
        os << "v" << p.target << ":";
        if (p.edges.empty()) os << " constant";
        for (auto [s, t] : p.edges) os << " (" << s << "->" << t << ")";
        os << "\n";
      }
      emit(os.str(), out_path);
      return 0;
    }
    if (*cmd_arcsets || *cmd_verify) {
      auto b = build_all(din);
      auto s = intersection_matrix(b.ag);
      auto paths = good_paths(b.ag);
      std::vector<Arcset> coll;
      for (const auto& p : paths) coll.push_back(build_arcset(b.ag, p));
      auto ar = check_adapted(coll, s);
      auto er = check_exceptional(coll, s);
      bool telescoped = true;
      std::vector<TelescopeReport> trs;
      for (const auto& a : coll) {
        trs.push_back(variation_of_arcset(b.ag, a));
        telescoped &= trs.back().ok;
      }
      bool chains = true;
      for (const auto& a : coll) chains &= a.pattern_links.size() + 1 == a.components.size();
      if (*cmd_arcsets) {
        nlohmann::json j = nlohmann::json::array();
        for (size_t i = 0; i < coll.size(); ++i)
          j.push_back(nlohmann::json::parse(arcset_to_json(b.ag, coll[i], ar, er, trs[i])));
        emit(j.dump(2), out_path);
        return 0;
      }
      std::ostringstream os;
      os << "adapted:      " << (ar.adapted ? "pass" : "FAIL") << "\n";
      os << "telescoping:  " << (telescoped ? "pass" : "FAIL") << "\n";
      os << "linear order: " << (chains ? "pass" : "FAIL") << "\n";
      os << "exceptional:  " << (er.exceptional ? "pass" : "FAIL") << "\n";
      emit(os.str(), out_path);
      return ar.adapted && telescoped && chains && er.exceptional ? 0 : 2;
    }
    if (*cmd_surface) {
      auto b = build_all(din);
      if (format == "dot") {
        auto surf = CombSurface::build(b.d, b.regions);
        emit(surf.gluing_graph_dot(b.d), out_path);
        return 0;
      }
      auto rep = surface_report(b.d, b.regions, b.ag);
      std::ostringstream os;
      os << "chi = " << rep.chi << ", genus = " << rep.genus << ", boundary = " << rep.boundary
         << "\n";
      os << "walk intersections:\n";
      for (int i = 0; i < rep.walk_intersections.size(); ++i) {
        os << "  [";
        for (int j = 0; j < rep.walk_intersections.size(); ++j)
          os << (j ? " " : "") << rep.walk_intersections(i, j);
        os << "]\n";
      }
      bool match = rep.walk_intersections == intersection_matrix(b.ag);
      os << "matches diagram form: " << (match ? "yes" : "NO") << "\n";
      for (size_t i = 0; i < rep.non_separating.size(); ++i)
        os << "v" << i << " walk: " << (rep.non_separating[i] ? "non-separating" : "separating")
           << "\n";
      emit(os.str(), out_path);
      return match ? 0 : 2;
    }
    if (*cmd_winding) {
      PlanarField f = grid_path.empty() ? make_field(field_spec) : grid_field(slurp(grid_path));
      auto c = parse_curve(slurp(curve_path));
      double w = winding_number(c, f);
      std::ostringstream os;
      os << w;
      double twice = std::round(2 * w);
      if (std::abs(2 * w - twice) < 2 * tol)
        os << "  (= " << twice / 2 << " within tolerance)";
      os << "\n";
      emit(os.str(), out_path);
      return 0;
    }
    if (*cmd_kpq) {
      auto m = KpqModel::build(kp, kq);
      if (kpq_report)
        emit(m.report_text(), out_path);
      else
        emit("genus " + std::to_string(m.genus()) + ", boundary length " +
                 std::to_string(m.boundary_sides() / 2),
             out_path);
      return 0;
    }
    if (*cmd_coherence) {
      std::vector<long long> known;
      int unknowns = 0;
      std::stringstream ss(assign);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (tok == "x" || tok == "?")
          ++unknowns;
        else
          known.push_back(std::stoll(tok));
      }
      std::ostringstream os;
      if (unknowns == 0) {
        auto c = coherence_check(chi, known);
        os << "sum = " << c.sum << ", chi = " << c.chi << ": " << (c.ok ? "pass" : "FAIL")
           << "\n";
        emit(os.str(), out_path);
        return c.ok ? 0 : 2;
      }
      if (unknowns > 1) fail("ParseError", "at most one unknown entry");
      os << "x = " << coherence_solve(chi, known) << "\n";
      emit(os.str(), out_path);
      return 0;
    }
    if (*cmd_fixtures) {
      if (fx_list || fx_emit.empty()) {
        std::ostringstream os;
        for (const auto& n : fixture_names()) os << n << "\n";
        emit(os.str(), out_path);
        return 0;
      }
      emit(fixture_json(fx_emit), out_path);
      return 0;
    }
    if (*cmd_pipeline) {
      PipelineOptions opts;
      opts.anchor = din.anchor_opt();
      opts.tamper_s = tamper;
      auto t0 = std::chrono::steady_clock::now();
      auto rep = run_pipeline(din.text(), opts);
      auto t1 = std::chrono::steady_clock::now();
      emit(format == "json" ? rep.to_json() : rep.to_text(), out_path);
      std::cerr << "elapsed "
                << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
                << " ms\n";
      if (rep.input_error) return 1;
      return rep.overall ? 0 : 2;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return classify(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
