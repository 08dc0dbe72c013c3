#include "dividekit/fixtures.hpp"

#include "dividekit/util.hpp"

namespace dividekit {

namespace {

// One branch, one crossing; the strand enters, loops once, exits.
const char* kA2 = R"({
  "crossings": [{"id": 0, "cyclic": [20, 21, 11, 30]}],
  "endpoints": [{"id": 0, "half_edge": 10}, {"id": 1, "half_edge": 31}],
  "edges": [
    {"id": 0, "ends": [10, 11]},
    {"id": 1, "ends": [20, 21]},
    {"id": 2, "ends": [30, 31]}
  ],
  "branches": [[0, 1, 2]]
})";

// Two arcs crossing twice, bounded lens between the crossings.
const char* kA3 = R"({
  "crossings": [
    {"id": 0, "cyclic": [101, 131, 110, 140]},
    {"id": 1, "cyclic": [141, 111, 150, 120]}
  ],
  "endpoints": [
    {"id": 0, "half_edge": 100},
    {"id": 1, "half_edge": 130},
    {"id": 2, "half_edge": 151},
    {"id": 3, "half_edge": 121}
  ],
  "edges": [
    {"id": 0, "ends": [100, 101]},
    {"id": 1, "ends": [110, 111]},
    {"id": 2, "ends": [120, 121]},
    {"id": 3, "ends": [130, 131]},
    {"id": 4, "ends": [140, 141]},
    {"id": 5, "ends": [150, 151]}
  ],
  "branches": [[0, 1, 2], [3, 4, 5]]
})";

// Three lines pairwise crossing once, central triangle.
const char* kD4 = R"({
  "crossings": [
    {"id": 0, "cyclic": [201, 301, 210, 310]},
    {"id": 1, "cyclic": [410, 211, 401, 220]},
    {"id": 2, "cyclic": [420, 311, 411, 320]}
  ],
  "endpoints": [
    {"id": 0, "half_edge": 200},
    {"id": 1, "half_edge": 300},
    {"id": 2, "half_edge": 400},
    {"id": 3, "half_edge": 221},
    {"id": 4, "half_edge": 321},
    {"id": 5, "half_edge": 421}
  ],
  "edges": [
    {"id": 0, "ends": [200, 201]},
    {"id": 1, "ends": [210, 211]},
    {"id": 2, "ends": [220, 221]},
    {"id": 3, "ends": [300, 301]},
    {"id": 4, "ends": [310, 311]},
    {"id": 5, "ends": [320, 321]},
    {"id": 6, "ends": [400, 401]},
    {"id": 7, "ends": [410, 411]},
    {"id": 8, "ends": [420, 421]}
  ],
  "branches": [[0, 1, 2], [3, 4, 5], [6, 7, 8]]
})";

// Three arcs pairwise crossing twice. Crossings 0..2 are the outer double
// points, 3..5 the corners of the central curved triangle.
const char* kTRI = R"({
  "crossings": [
    {"id": 0, "cyclic": [1090, 1001, 1081, 1010]},
    {"id": 1, "cyclic": [1140, 1051, 1131, 1060]},
    {"id": 2, "cyclic": [1040, 1101, 1031, 1110]},
    {"id": 3, "cyclic": [1021, 1070, 1030, 1061]},
    {"id": 4, "cyclic": [1071, 1120, 1080, 1111]},
    {"id": 5, "cyclic": [1121, 1020, 1130, 1011]}
  ],
  "endpoints": [
    {"id": 0, "half_edge": 1050},
    {"id": 1, "half_edge": 1091},
    {"id": 2, "half_edge": 1000},
    {"id": 3, "half_edge": 1041},
    {"id": 4, "half_edge": 1100},
    {"id": 5, "half_edge": 1141}
  ],
  "edges": [
    {"id": 0, "ends": [1000, 1001]},
    {"id": 1, "ends": [1010, 1011]},
    {"id": 2, "ends": [1020, 1021]},
    {"id": 3, "ends": [1030, 1031]},
    {"id": 4, "ends": [1040, 1041]},
    {"id": 5, "ends": [1050, 1051]},
    {"id": 6, "ends": [1060, 1061]},
    {"id": 7, "ends": [1070, 1071]},
    {"id": 8, "ends": [1080, 1081]},
    {"id": 9, "ends": [1090, 1091]},
    {"id": 10, "ends": [1100, 1101]},
    {"id": 11, "ends": [1110, 1111]},
    {"id": 12, "ends": [1120, 1121]},
    {"id": 13, "ends": [1130, 1131]},
    {"id": 14, "ends": [1140, 1141]}
  ],
  "branches": [[0, 1, 2, 3, 4], [5, 6, 7, 8, 9], [10, 11, 12, 13, 14]]
})";

// Coherence data for x(y^3 - x^4): two branches meeting with multiplicity 3;
// the two subsurfaces cut out by the three connecting cylinders have genus 3
// and 0, and the boundary winding numbers are -8 and -2.
const char* kXCUSP = R"({
  "g1": 3,
  "g2": 0,
  "nu12": 3,
  "windings": [-8, -2]
})";

}  // namespace

std::vector<std::string> fixture_names() { return {"A2", "A3", "D4", "TRI", "XCUSP"}; }

bool is_fixture(const std::string& name) {
  for (const auto& n : fixture_names())
    if (n == name) return true;
  return false;
}

std::string fixture_json(const std::string& name) {
  if (name == "A2") return kA2;
  if (name == "A3") return kA3;
  if (name == "D4") return kD4;
  if (name == "TRI") return kTRI;
  if (name == "XCUSP") return kXCUSP;
  fail("UnknownFixture", name);
}

}  // namespace dividekit
