#include "gppv/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>

namespace gppv {

namespace {
std::pair<VertexId, VertexId> key(VertexId a, VertexId b) { return {std::min(a, b), std::max(a, b)}; }
}  // namespace

void PlumbingGraph::add_vertex(VertexId id, const Rational& weight) {
  if (id < 0) throw Error("vertex ids must be non-negative");
  if (has_vertex(id)) throw Error("duplicate vertex id " + std::to_string(id));
  ids_.push_back(id);
  weights_[id] = weight;
}

void PlumbingGraph::add_edge(VertexId a, VertexId b) {
  if (!has_vertex(a) || !has_vertex(b)) throw Error("edge references an unknown vertex");
  if (a == b) throw Error("self loops are not allowed");
  if (!edges_.insert(key(a, b)).second) throw Error("duplicate edge");
}

void PlumbingGraph::remove_vertex(VertexId id) {
  if (!has_vertex(id)) throw Error("unknown vertex " + std::to_string(id));
  for (VertexId u : neighbors(id)) edges_.erase(key(u, id));
  ids_.erase(std::find(ids_.begin(), ids_.end(), id));
  weights_.erase(id);
}

void PlumbingGraph::remove_edge(VertexId a, VertexId b) {
  if (edges_.erase(key(a, b)) == 0) throw Error("unknown edge");
}

void PlumbingGraph::set_weight(VertexId id, const Rational& w) {
  if (!has_vertex(id)) throw Error("unknown vertex " + std::to_string(id));
  weights_[id] = w;
}

bool PlumbingGraph::has_edge(VertexId a, VertexId b) const { return edges_.count(key(a, b)) != 0; }

const Rational& PlumbingGraph::weight(VertexId id) const {
  auto it = weights_.find(id);
  if (it == weights_.end()) throw Error("unknown vertex " + std::to_string(id));
  return it->second;
}

std::vector<VertexId> PlumbingGraph::neighbors(VertexId id) const {
  std::vector<VertexId> out;
  for (const auto& [a, b] : edges_) {
    if (a == id) out.push_back(b);
    if (b == id) out.push_back(a);
  }
  // order by vertex position so downstream indexing is stable
  std::sort(out.begin(), out.end(), [&](VertexId x, VertexId y) { return index_of(x) < index_of(y); });
  return out;
}

int PlumbingGraph::degree(VertexId id) const {
  int d = 0;
  for (const auto& [a, b] : edges_) d += (a == id) + (b == id);
  return d;
}

std::size_t PlumbingGraph::index_of(VertexId id) const {
  auto it = std::find(ids_.begin(), ids_.end(), id);
  if (it == ids_.end()) throw Error("unknown vertex " + std::to_string(id));
  return static_cast<std::size_t>(it - ids_.begin());
}

VertexId PlumbingGraph::fresh_id() const {
  VertexId v = 0;
  while (has_vertex(v)) ++v;
  return v;
}

bool PlumbingGraph::integer_weights() const {
  for (const auto& [id, w] : weights_)
    if (!is_integer(w)) return false;
  return true;
}

bool operator==(const PlumbingGraph& a, const PlumbingGraph& b) {
  if (a.weights_ != b.weights_ || a.edges_ != b.edges_) return false;
  return true;
}

std::vector<int> degree_vector(const PlumbingGraph& g) {
  std::vector<int> d;
  for (VertexId v : g.vertices()) d.push_back(g.degree(v));
  return d;
}

RatMatrix linking_matrix(const PlumbingGraph& g) {
  const std::size_t n = g.size();
  RatMatrix w(n, n);
  for (std::size_t i = 0; i < n; ++i) w(i, i) = g.weight(g.vertices()[i]);
  for (const auto& [a, b] : g.edges()) {
    std::size_t i = g.index_of(a), j = g.index_of(b);
    w(i, j) = 1;
    w(j, i) = 1;
  }
  return w;
}

ValidationReport validate(const PlumbingGraph& g) {
  ValidationReport r;
  r.nonempty = g.size() > 0;
  if (!r.nonempty) {
    r.failures.push_back("graph has no vertices");
    return r;
  }
  r.acyclic = g.edges().size() + 1 == g.size();
  // connectivity by BFS
  std::set<VertexId> seen{g.vertices()[0]};
  std::queue<VertexId> q;
  q.push(g.vertices()[0]);
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop();
    for (VertexId u : g.neighbors(v))
      if (seen.insert(u).second) q.push(u);
  }
  r.connected = seen.size() == g.size();
  if (!r.connected) r.failures.push_back("graph is not connected");
  if (!r.acyclic) r.failures.push_back("graph has a cycle (|E| != |V| - 1)");
  r.negative_weights = true;
  for (VertexId v : g.vertices())
    if (g.weight(v) >= 0) r.negative_weights = false;
  if (!r.negative_weights) r.failures.push_back("some vertex weight is not negative");
  r.integer_weights = g.integer_weights();
  RatMatrix w = linking_matrix(g);
  r.leading_minors = leading_minors(w);
  r.det = r.leading_minors.back();
  r.negative_definite = true;
  for (std::size_t j = 0; j < r.leading_minors.size(); ++j) {
    int want = (j % 2 == 0) ? -1 : 1;  // sign of the (j+1)-th minor is (-1)^{j+1}
    if (sgn(r.leading_minors[j]) != want) r.negative_definite = false;
  }
  if (!r.negative_definite)
    r.failures.push_back("linking matrix is not negative definite (det W = " + to_string(r.det) + ")");
  return r;
}

void require_valid(const PlumbingGraph& g) {
  ValidationReport r = validate(g);
  if (r.ok()) return;
  std::string msg = "invalid plumbing graph:";
  for (const auto& f : r.failures) msg += " " + f + ";";
  throw Error(msg);
}

std::string to_string(MoveKind k) {
  switch (k) {
    case MoveKind::BlowDownEdge: return "blow_down_edge";
    case MoveKind::BlowDownLeaf: return "blow_down_leaf";
    case MoveKind::ZeroMerge: return "zero_merge";
  }
  return "?";
}

namespace {

VertexId pick_id(const PlumbingGraph& g, VertexId wanted) {
  if (wanted >= 0) {
    if (g.has_vertex(wanted)) throw Error("requested id already in use");
    return wanted;
  }
  return g.fresh_id();
}

void need(bool cond, const std::string& what) {
  if (!cond) throw Error("Neumann move not applicable: " + what);
}

}  // namespace

PlumbingGraph apply_neumann_unchecked(const PlumbingGraph& g, const NeumannMove& m) {
  need(m.sign == 1 || m.sign == -1 || m.kind == MoveKind::ZeroMerge, "sign must be +-1");
  need(!m.location.empty(), "missing location");
  PlumbingGraph r = g;
  const VertexId v = m.location[0];
  need(g.has_vertex(v), "unknown vertex " + std::to_string(v));
  switch (m.kind) {
    case MoveKind::BlowDownEdge:
      if (!m.inverse) {
        need(g.degree(v) == 2, "vertex is not bivalent");
        need(g.weight(v) == m.sign, "vertex weight is not the move sign");
        auto nb = g.neighbors(v);
        r.remove_vertex(v);
        r.add_edge(nb[0], nb[1]);
        for (VertexId u : nb) r.set_weight(u, g.weight(u) - m.sign);
      } else {
        need(m.location.size() == 2 && g.has_edge(m.location[0], m.location[1]), "location is not an edge");
        VertexId a = m.location[0], b = m.location[1];
        VertexId x = pick_id(g, m.new_id);
        r.remove_edge(a, b);
        r.add_vertex(x, m.sign);
        r.add_edge(a, x);
        r.add_edge(x, b);
        r.set_weight(a, g.weight(a) + m.sign);
        r.set_weight(b, g.weight(b) + m.sign);
      }
      break;
    case MoveKind::BlowDownLeaf:
      if (!m.inverse) {
        need(g.degree(v) == 1, "vertex is not a leaf");
        need(g.weight(v) == m.sign, "vertex weight is not the move sign");
        VertexId u = g.neighbors(v)[0];
        r.remove_vertex(v);
        r.set_weight(u, g.weight(u) - m.sign);
      } else {
        VertexId x = pick_id(g, m.new_id);
        r.add_vertex(x, m.sign);
        r.add_edge(v, x);
        r.set_weight(v, g.weight(v) + m.sign);
      }
      break;
    case MoveKind::ZeroMerge:
      if (!m.inverse) {
        need(g.degree(v) == 2, "vertex is not bivalent");
        need(g.weight(v) == 0, "vertex weight is not 0");
        auto nb = g.neighbors(v);
        VertexId keep = std::min(nb[0], nb[1]);
        if (m.location.size() > 1) {
          need(m.location[1] == nb[0] || m.location[1] == nb[1], "kept vertex is not a neighbour");
          keep = m.location[1];
        }
        VertexId gone = keep == nb[0] ? nb[1] : nb[0];
        auto moved = g.neighbors(gone);
        r.remove_vertex(v);
        r.remove_vertex(gone);
        for (VertexId u : moved)
          if (u != v) r.add_edge(keep, u);
        r.set_weight(keep, g.weight(keep) + g.weight(gone));
      } else {
        for (VertexId u : m.split_neighbors) need(g.has_edge(v, u), "split neighbour is not adjacent");
        VertexId x = pick_id(g, m.new_id);
        r.add_vertex(x, m.split_weight);
        VertexId z = pick_id(r, m.new_id2);
        r.add_vertex(z, 0);
        for (VertexId u : m.split_neighbors) {
          r.remove_edge(v, u);
          r.add_edge(x, u);
        }
        r.add_edge(v, z);
        r.add_edge(z, x);
        r.set_weight(v, g.weight(v) - m.split_weight);
      }
      break;
  }
  return r;
}

PlumbingGraph apply_neumann(const PlumbingGraph& g, const NeumannMove& m) {
  PlumbingGraph r = apply_neumann_unchecked(g, m);
  ValidationReport rep = validate(r);
  if (!rep.ok()) {
    std::string msg = "Neumann move rejected:";
    for (const auto& f : rep.failures) msg += " " + f + ";";
    throw Error(msg);
  }
  return r;
}

NeumannMove inverse_move(const PlumbingGraph& g, const NeumannMove& m) {
  PlumbingGraph r = apply_neumann_unchecked(g, m);
  NeumannMove inv;
  inv.kind = m.kind;
  inv.sign = m.sign;
  inv.inverse = !m.inverse;
  const VertexId v = m.location[0];
  switch (m.kind) {
    case MoveKind::BlowDownEdge:
      if (!m.inverse) {
        inv.location = g.neighbors(v);
        inv.new_id = v;
      } else {
        for (VertexId x : r.vertices())
          if (!g.has_vertex(x)) inv.location = {x};
      }
      break;
    case MoveKind::BlowDownLeaf:
      if (!m.inverse) {
        inv.location = g.neighbors(v);
        inv.new_id = v;
      } else {
        for (VertexId x : r.vertices())
          if (!g.has_vertex(x)) inv.location = {x};
      }
      break;
    case MoveKind::ZeroMerge:
      if (!m.inverse) {
        auto nb = g.neighbors(v);
        VertexId keep = m.location.size() > 1 ? m.location[1] : std::min(nb[0], nb[1]);
        VertexId gone = keep == nb[0] ? nb[1] : nb[0];
        inv.location = {keep};
        inv.split_weight = g.weight(gone);
        for (VertexId u : g.neighbors(gone))
          if (u != v) inv.split_neighbors.push_back(u);
        inv.new_id = gone;
        inv.new_id2 = v;
      } else {
        VertexId x = -1, z = -1;
        for (VertexId y : r.vertices())
          if (!g.has_vertex(y)) (r.weight(y) == 0 && r.degree(y) == 2 && z < 0 ? z : x) = y;
        inv.location = {z, v};
      }
      break;
  }
  return inv;
}

std::vector<NeumannMove> applicable_moves(const PlumbingGraph& g) {
  std::vector<NeumannMove> out;
  auto try_add = [&](const NeumannMove& m) {
    try {
      apply_neumann(g, m);
      out.push_back(m);
    } catch (const Error&) {
    }
  };
  for (VertexId v : g.vertices()) {
    const Rational& w = g.weight(v);
    int d = g.degree(v);
    if ((w == 1 || w == -1) && d == 2) try_add({MoveKind::BlowDownEdge, false, to_long_exact(w) > 0 ? 1 : -1, {v}});
    if ((w == 1 || w == -1) && d == 1) try_add({MoveKind::BlowDownLeaf, false, to_long_exact(w) > 0 ? 1 : -1, {v}});
    if (w == 0 && d == 2) try_add({MoveKind::ZeroMerge, false, 1, {v}});
    try_add({MoveKind::BlowDownLeaf, true, -1, {v}});
  }
  for (const auto& [a, b] : g.edges()) try_add({MoveKind::BlowDownEdge, true, -1, {a, b}});
  return out;
}

}  // namespace gppv
