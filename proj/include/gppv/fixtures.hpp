#pragma once

#include <string>
#include <vector>

#include "gppv/graph.hpp"

namespace gppv {

/// center id 0, leaves 1..n
PlumbingGraph star_graph(long center, const std::vector<long>& leaves);
/// ids 0..n-1 along the path
PlumbingGraph path_graph(const std::vector<long>& weights);

/// Stable names of the built-in graphs (all validate).
std::vector<std::string> fixture_names();
std::string fixture_description(const std::string& name);
/// throws Error for an unknown name; accepts a2..a8 for the -2 chains
PlumbingGraph fixture(const std::string& name);

}  // namespace gppv
