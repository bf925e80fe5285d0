#pragma once

#include <string>

#include "cantordyn/finite_system.hpp"
#include "cantordyn/spiral.hpp"

namespace cantordyn::dot {

/// Standard directed-graph DOT: one node per state (labelled), one edge per
/// dynamics pair.
std::string to_dot(const FiniteSystem& sys,
                   const std::string& graph_name = "system");

/// DOT for a spiral level with the three sides colour-coded (left cycle
/// blue, chain grey, right cycle red).
std::string to_dot(const spiral::Level& level);

}  // namespace cantordyn::dot
