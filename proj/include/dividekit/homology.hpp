#pragma once

#include <string>
#include <vector>

#include "dividekit/divide.hpp"
#include "dividekit/util.hpp"

namespace dividekit {

// Absolute class: integer coordinates in the vanishing-cycle basis.
using AbsClass = std::vector<std::int64_t>;
// Relative class: pairing vector, entry j = (class . V_j).
using RelClass = std::vector<std::int64_t>;

struct MatrixBundle {
  int mu = 0;
  IntMat S;  // intersection form, antisymmetric
  IntMat L;  // Seifert matrix, lower triangular, diagonal -1
  IntMat H;  // homological monodromy
  IntMat P;  // adapted pairing, P = -L
};

// S from the typed adjacency: +1 for (+,0), (0,-), (+,-) ordered pairs on edges.
IntMat intersection_matrix(const AGammaDiagram& ag);

// Right-handed twist along basis cycle i: x -> x - (x.V_i) V_i.
IntMat dehn_twist_matrix(const IntMat& s, int i);

// Ordered twist product T_1 T_2 ... T_mu.
IntMat monodromy_matrix(const IntMat& s);

IntMat seifert_matrix(const IntMat& s);

MatrixBundle build_bundle(const AGammaDiagram& ag);
MatrixBundle bundle_from_s(const IntMat& s);

// Adapted-basis variation. apply: rel (pairing vector) -> abs; inverse exact.
AbsClass variation_apply(const MatrixBundle& b, const RelClass& rel);
RelClass variation_inverse(const MatrixBundle& b, const AbsClass& abs);

// H' = I - (P^T)^{-1} S^T; must agree with the twist product and (L^T)^{-1} L.
IntMat monodromy_from_variation(const IntMat& s, const IntMat& p);

struct SeparatingValue {
  std::int64_t value = 0;
  bool degenerate = false;      // all delta entries equal
  bool bound_satisfied = false; // value <= -2
  bool a1_exclusion = false;    // value == -1, the excluded one-node case
};

// Self-pairing of the boundary combination with coefficients delta:
// sum_{i<j} -nu_ij (delta_i - delta_j)^2.
SeparatingValue seifert_separating_value(const std::vector<int>& delta,
                                         const std::vector<std::vector<int>>& nu);

std::string bundle_to_json(const MatrixBundle& b);
std::string bundle_report_text(const MatrixBundle& b);

}  // namespace dividekit
