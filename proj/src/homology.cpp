#include "dividekit/homology.hpp"

#include <sstream>

#include "json.hpp"

namespace dividekit {

IntMat intersection_matrix(const AGammaDiagram& ag) {
  int n = ag.mu();
  IntMat s(n);
  auto rank = [](VType t) { return t == VType::Minus ? 0 : (t == VType::Zero ? 1 : 2); };
  for (auto [a, b] : ag.edges) {
    VType ta = ag.vertices[a].type, tb = ag.vertices[b].type;
    if (ta == tb) fail("Internal", "same-type edge in diagram");
    // +1 for the ordered pairs (+,0), (0,-), (+,-): higher rank hits lower rank.
    int hi = rank(ta) > rank(tb) ? a : b;
    int lo = hi == a ? b : a;
    s(hi, lo) = 1;
    s(lo, hi) = -1;
  }
  return s;
}

IntMat dehn_twist_matrix(const IntMat& s, int i) {
  int n = s.size();
  IntMat t = IntMat::identity(n);
  // T_i = I - e_i (S e_i)^T: subtract (x . V_i) along V_i.
  for (int j = 0; j < n; ++j) t(i, j) -= s(j, i);
  return t;
}

IntMat monodromy_matrix(const IntMat& s) {
  int n = s.size();
  IntMat h = IntMat::identity(n);
  for (int i = 0; i < n; ++i) h = h * dehn_twist_matrix(s, i);
  return h;
}

IntMat seifert_matrix(const IntMat& s) {
  int n = s.size();
  IntMat l(n);
  for (int i = 0; i < n; ++i) {
    l(i, i) = -1;
    for (int j = 0; j < i; ++j) l(i, j) = -s(i, j);
  }
  return l;
}

MatrixBundle bundle_from_s(const IntMat& s) {
  MatrixBundle b;
  b.mu = s.size();
  b.S = s;
  b.L = seifert_matrix(s);
  // H = (L^T)^{-1} L, solved exactly against the upper-triangular L^T.
  b.H = solve_upper_unit(b.L.transpose(), b.L);
  b.P = IntMat(b.mu);
  for (int i = 0; i < b.mu; ++i)
    for (int j = 0; j < b.mu; ++j) b.P(i, j) = -b.L(i, j);
  IntMat hd = monodromy_matrix(s);
  if (hd != b.H) fail("Internal", "twist product disagrees with (L^T)^{-1} L");
  return b;
}

MatrixBundle build_bundle(const AGammaDiagram& ag) {
  return bundle_from_s(intersection_matrix(ag));
}

AbsClass variation_apply(const MatrixBundle& b, const RelClass& rel) {
  if (static_cast<int>(rel.size()) != b.mu) fail("SingularPairing", "pairing vector length");
  // Coordinates k in the adapted basis satisfy P^T k = p; variation sends k to -k.
  auto k = solve_upper_unit(b.P.transpose(), rel);
  for (auto& v : k) v = -v;
  return k;
}

RelClass variation_inverse(const MatrixBundle& b, const AbsClass& abs) {
  if (static_cast<int>(abs.size()) != b.mu) fail("SingularPairing", "class vector length");
  // p = -P^T a.
  RelClass p(b.mu, 0);
  for (int j = 0; j < b.mu; ++j)
    for (int i = 0; i < b.mu; ++i) p[j] -= b.P(i, j) * abs[i];
  return p;
}

IntMat monodromy_from_variation(const IntMat& s, const IntMat& p) {
  // j(x) has pairing vector S^T x; its adapted coordinates c solve P^T c = S^T x;
  // the twisted image is x - c.
  IntMat c = solve_upper_unit(p.transpose(), s.transpose());
  return IntMat::identity(s.size()) - c;
}

SeparatingValue seifert_separating_value(const std::vector<int>& delta,
                                         const std::vector<std::vector<int>>& nu) {
  int r = static_cast<int>(delta.size());
  SeparatingValue out;
  bool all_equal = true;
  for (int i = 1; i < r; ++i)
    if (delta[i] != delta[0]) all_equal = false;
  if (all_equal) {
    out.degenerate = true;
    return out;
  }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      std::int64_t diff = delta[i] - delta[j];
      out.value -= static_cast<std::int64_t>(nu[i][j]) * diff * diff;
    }
  out.bound_satisfied = out.value <= -2;
  out.a1_exclusion = out.value == -1;
  return out;
}

namespace {

nlohmann::json mat_json(const IntMat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.size(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

void print_mat(std::ostringstream& os, const char* name, const IntMat& m) {
  os << name << " =\n";
  for (int i = 0; i < m.size(); ++i) {
    os << "  [";
    for (int j = 0; j < m.size(); ++j) os << (j ? " " : "") << m(i, j);
    os << "]\n";
  }
}

}  // namespace

std::string bundle_to_json(const MatrixBundle& b) {
  nlohmann::json j;
  j["mu"] = b.mu;
  j["S"] = mat_json(b.S);
  j["L"] = mat_json(b.L);
  j["H"] = mat_json(b.H);
  j["P"] = mat_json(b.P);
  j["trace_H"] = b.H.trace();
  std::int64_t det = 1;
  for (int i = 0; i < b.mu; ++i) det *= b.L(i, i);
  j["det_L"] = det;
  j["char_poly_H"] = char_poly(b.H);
  return j.dump(2);
}

std::string bundle_report_text(const MatrixBundle& b) {
  std::ostringstream os;
  os << "mu = " << b.mu << "\n";
  print_mat(os, "S", b.S);
  print_mat(os, "L", b.L);
  print_mat(os, "H", b.H);
  os << "trace(H) = " << b.H.trace() << "\n";
  std::int64_t det = 1;
  for (int i = 0; i < b.mu; ++i) det *= b.L(i, i);
  os << "det(L) = " << det << "\n";
  bool anti = true, split = true;
  for (int i = 0; i < b.mu; ++i)
    for (int j = 0; j < b.mu; ++j) {
      if (b.S(i, j) != -b.S(j, i)) anti = false;
      std::int64_t lt = b.L.transpose()(i, j) - b.L(i, j);
      if (lt != b.S(i, j)) split = false;
    }
  os << "check S antisymmetric: " << (anti ? "ok" : "FAIL") << "\n";
  os << "check S = L^T - L:     " << (split ? "ok" : "FAIL") << "\n";
  IntMat h2 = monodromy_from_variation(b.S, b.P);
  os << "check triple agreement: " << (h2 == b.H ? "ok" : "FAIL") << "\n";
  auto cp = char_poly(b.H);
  os << "char poly H: ";
  for (int k = static_cast<int>(cp.size()) - 1; k >= 0; --k) {
    os << cp[k];
    if (k) os << "*t^" << k << " + ";
  }
  os << "\n";
  return os.str();
}

}  // namespace dividekit
