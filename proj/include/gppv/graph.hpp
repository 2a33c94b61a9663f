#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gppv/matrix.hpp"
#include "gppv/rational.hpp"

namespace gppv {

using VertexId = int;

/// A weighted tree. Vertex order is insertion order and fixes every vector
/// and matrix indexing downstream.
class PlumbingGraph {
 public:
  PlumbingGraph() = default;

  void add_vertex(VertexId id, const Rational& weight);
  void add_edge(VertexId a, VertexId b);
  void remove_vertex(VertexId id);
  void remove_edge(VertexId a, VertexId b);
  void set_weight(VertexId id, const Rational& w);

  std::size_t size() const { return ids_.size(); }
  const std::vector<VertexId>& vertices() const { return ids_; }
  const std::set<std::pair<VertexId, VertexId>>& edges() const { return edges_; }
  bool has_vertex(VertexId id) const { return weights_.count(id) != 0; }
  bool has_edge(VertexId a, VertexId b) const;
  const Rational& weight(VertexId id) const;
  std::vector<VertexId> neighbors(VertexId id) const;
  int degree(VertexId id) const;
  std::size_t index_of(VertexId id) const;
  VertexId fresh_id() const;  // smallest unused non-negative id
  bool integer_weights() const;

  friend bool operator==(const PlumbingGraph& a, const PlumbingGraph& b);
  friend bool operator!=(const PlumbingGraph& a, const PlumbingGraph& b) { return !(a == b); }

 private:
  std::vector<VertexId> ids_;
  std::map<VertexId, Rational> weights_;
  std::set<std::pair<VertexId, VertexId>> edges_;  // (min, max)
};

struct ValidationReport {
  bool nonempty = false;
  bool connected = false;
  bool acyclic = false;
  bool negative_definite = false;
  bool negative_weights = false;
  bool integer_weights = false;
  Rational det = 0;
  std::vector<Rational> leading_minors;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  bool is_tree() const { return connected && acyclic; }
};

ValidationReport validate(const PlumbingGraph& g);
void require_valid(const PlumbingGraph& g);  // throws Error with the failures

std::vector<int> degree_vector(const PlumbingGraph& g);
RatMatrix linking_matrix(const PlumbingGraph& g);

enum class MoveKind { BlowDownEdge, BlowDownLeaf, ZeroMerge };

/// One Neumann move. Forward direction:
///   BlowDownEdge: remove the bivalent +-1 vertex location[0], join its
///                 neighbours, each neighbour weight -= sign.
///   BlowDownLeaf: remove the +-1 leaf location[0], neighbour weight -= sign.
///   ZeroMerge:    remove the bivalent 0 vertex location[0] and merge its two
///                 neighbours into location[1] if given, else the smaller id.
/// Inverse direction (blow up / split):
///   BlowDownEdge: insert a vertex of weight sign on edge (location[0], location[1]).
///   BlowDownLeaf: attach a leaf of weight sign to location[0].
///   ZeroMerge:    split location[0] into itself and a new vertex of weight
///                 split_weight joined through a new 0 vertex; neighbours in
///                 split_neighbors move to the new vertex.
struct NeumannMove {
  MoveKind kind = MoveKind::BlowDownLeaf;
  bool inverse = false;
  int sign = -1;
  std::vector<VertexId> location;
  Rational split_weight = 0;
  std::vector<VertexId> split_neighbors;
  VertexId new_id = -1;   // id for the created vertex (-1: fresh)
  VertexId new_id2 = -1;  // id for the created 0 vertex of a split (-1: fresh)
};

std::string to_string(MoveKind k);
/// structural move without the definiteness check
PlumbingGraph apply_neumann_unchecked(const PlumbingGraph& g, const NeumannMove& m);
/// throws Error if the move is inapplicable or the result is not negative definite
PlumbingGraph apply_neumann(const PlumbingGraph& g, const NeumannMove& m);
/// a move taking apply_neumann_unchecked(g, m) back to g
NeumannMove inverse_move(const PlumbingGraph& g, const NeumannMove& m);
/// every move instance applicable to g that keeps the graph negative definite
/// (blow-downs, plus blow-ups of sign -1 on every edge and vertex)
std::vector<NeumannMove> applicable_moves(const PlumbingGraph& g);

}  // namespace gppv
