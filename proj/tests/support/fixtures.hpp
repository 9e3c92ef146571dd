#pragma once

// The five-agent example network used throughout the tests.

#include "surround/scenario.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace surround::testing {

inline std::vector<WeightSpec> ring5_weights() {
  return {{0, 1, 0.5, 1.0}, {1, 2, 0.5, 1.0}, {2, 3, 0.5, 1.0}, {3, 4, 1.0 / 3.0, 1.0}, {4, 0, 1.0 / 6.0, 1.0}};
}

/// Ring with w51 turned to π/3 and the chord (1,4) with argument −π/2.
inline std::vector<WeightSpec> ring5_chord_weights() {
  auto ws = ring5_weights();
  ws[4].arg_over_pi = 1.0 / 3.0;
  ws.push_back({0, 3, -0.5, 1.0});
  return ws;
}

inline CVector ring5_x0() { return {{2, 4}, {4, 3}, {-4, -3}, {-4, 2}, {2, 3}}; }

/// Alternating schedule: arcs (1,2),(3,4),(5,1) then (2,3),(4,5), five time units each.
inline std::vector<ScheduleSegment> ring5_segments() { return {{5.0, {0, 2, 4}}, {5.0, {1, 3}}}; }

inline std::filesystem::path scenario_path(const std::string& name) {
  return std::filesystem::path(SURROUND_SCENARIO_DIR) / name;
}

} // namespace surround::testing
