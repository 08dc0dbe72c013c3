#pragma once

#include <string>
#include <vector>

namespace dividekit {

// Canonical divide inputs: A2 (one-crossing loop), A3 (two-arc lens),
// D4 (three lines, central triangle), TRI (three arcs pairwise crossing
// twice, central curved triangle of depth 1). XCUSP carries the coherence
// data for the two-branch curve x(y^3 - x^4).
std::vector<std::string> fixture_names();
bool is_fixture(const std::string& name);
std::string fixture_json(const std::string& name);

}  // namespace dividekit
