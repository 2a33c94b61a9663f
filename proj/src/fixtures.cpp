#include "gppv/fixtures.hpp"

#include <map>

namespace gppv {

PlumbingGraph star_graph(long center, const std::vector<long>& leaves) {
  PlumbingGraph g;
  g.add_vertex(0, center);
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    g.add_vertex(static_cast<VertexId>(i + 1), leaves[i]);
    g.add_edge(0, static_cast<VertexId>(i + 1));
  }
  return g;
}

PlumbingGraph path_graph(const std::vector<long>& weights) {
  PlumbingGraph g;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    g.add_vertex(static_cast<VertexId>(i), weights[i]);
    if (i) g.add_edge(static_cast<VertexId>(i - 1), static_cast<VertexId>(i));
  }
  return g;
}

namespace {

PlumbingGraph e8() {
  // center 0; arms of length 1, 2, 4
  PlumbingGraph g;
  for (VertexId v = 0; v < 8; ++v) g.add_vertex(v, -2);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(2, 3);
  g.add_edge(0, 4);
  g.add_edge(4, 5);
  g.add_edge(5, 6);
  g.add_edge(6, 7);
  return g;
}

PlumbingGraph h_graph() {
  PlumbingGraph g;
  g.add_vertex(0, -3);
  g.add_vertex(1, -1);
  g.add_vertex(2, -2);
  g.add_vertex(3, -3);
  g.add_vertex(4, -3);
  g.add_vertex(5, -5);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(0, 3);
  g.add_edge(1, 4);
  g.add_edge(1, 5);
  return g;
}

const std::map<std::string, std::string>& descriptions() {
  static const std::map<std::string, std::string> d = {
      {"s3", "single vertex of weight -1"},
      {"a2", "chain (-2,-2)"},
      {"a3", "chain (-2,-2,-2)"},
      {"a4", "chain (-2,-2,-2,-2)"},
      {"y2337", "star: center -1, leaves -2,-3,-7"},
      {"ygen", "star: center -2, leaves -3,-5,-7"},
      {"e8", "E8 tree, all weights -2, arms 1,2,4"},
      {"h", "H-graph: centers -3 and -1 joined; leaves -2,-3 and -3,-5"},
  };
  return d;
}

}  // namespace

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const char* n : {"s3", "a2", "a3", "a4", "y2337", "ygen", "e8", "h"}) out.emplace_back(n);
  return out;
}

std::string fixture_description(const std::string& name) {
  auto it = descriptions().find(name);
  if (it != descriptions().end()) return it->second;
  return "";
}

PlumbingGraph fixture(const std::string& name) {
  if (name == "s3") return star_graph(-1, {});
  if (name == "y2337") return star_graph(-1, {-2, -3, -7});
  if (name == "ygen") return star_graph(-2, {-3, -5, -7});
  if (name == "e8") return e8();
  if (name == "h") return h_graph();
  if (name.size() == 2 && name[0] == 'a' && name[1] >= '1' && name[1] <= '8')
    return path_graph(std::vector<long>(static_cast<std::size_t>(name[1] - '0'), -2));
  throw Error("unknown fixture: " + name);
}

}  // namespace gppv
