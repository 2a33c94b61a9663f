#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gppv/graph.hpp"
#include "gppv/multilaurent.hpp"

namespace gppv {

/// One level of the pruning chain. Vertex ids are those of the original graph.
struct PrunedLevel {
  int n = 0;
  PlumbingGraph graph;  // rational weights w_v^<n>
  std::map<VertexId, Integer> M;
  std::map<VertexId, Integer> w_tilde;  // M_v w_v^<n>
  std::map<VertexId, std::vector<VertexId>> subtree;  // V_v^<n>
  std::map<VertexId, std::vector<VertexId>> leaves;   // degree-1 neighbours in the level graph
  Rational det;
  // prod |M_i^<m>| over leaves i removed at levels m < n; the level-n sum over
  // mu mod 2k M^<n> is divided by |det M^<n>| times this
  Integer pruned_norm = 1;
};

struct PruneStep {
  PlumbingGraph graph;
  std::map<VertexId, std::vector<VertexId>> removed;  // survivor -> pruned leaves
  bool terminal = false;                              // input had <= 2 vertices
};

/// removes every degree-1 vertex, w_v -> w_v - sum 1/w_i
PruneStep prune_once(const PlumbingGraph& g);

struct PruneChain {
  std::vector<PrunedLevel> levels;  // ends with 1 or 2 vertices
  std::vector<std::string> failures;  // violated invariants (empty when all hold)
  bool ok() const { return failures.empty(); }
};
/// full chain; checks w~ integral, w^<n> < 0, the determinant identity and
/// that (W^<n+1>)^{-1} is the corresponding submatrix of (W^<n>)^{-1}
PruneChain prune_sequence(const PlumbingGraph& g);

/// x^T W^{-1} x = x'^T (W^<1>)^{-1} x' + sum_i x_i^2 / w_i with
/// x'_v = x_v - sum_{i pruned at v} x_i / w_i, and the primal form
/// x^T W x = z^T W^<1> z + sum_i (w_i x_i + x_v(i))^2 / w_i, z = x restricted.
bool quadratic_identities_hold(const PlumbingGraph& g, const std::vector<Rational>& x);

enum class PhiAlgo { Naive, Tree, Pruned };
std::string to_string(PhiAlgo a);
PhiAlgo parse_phi_algo(const std::string& s);

/// F_v^<n>(mu, t) and G_v^<n>(mu, t) at level k, as truncated series in the
/// variables t_v (index = position of v in the original graph).
class PrunedFunctions {
 public:
  /// cap is the total-degree window wanted for phi; series are computed with
  /// enough headroom to cover the pole orders
  PrunedFunctions(const PlumbingGraph& g, long k, int cap);
  ~PrunedFunctions();
  PrunedFunctions(const PrunedFunctions&) = delete;
  PrunedFunctions& operator=(const PrunedFunctions&) = delete;

  const PlumbingGraph& graph() const;
  const PruneChain& chain() const;
  long k() const;
  int cap() const;
  int working_cap() const;
  int variable(VertexId v) const;

  /// memoized by mu mod 2k|M_v^<n>|
  const MultiLaurent& F(int n, VertexId v, long mu) const;
  /// memoized by mu mod 2k|w~_v^<n>|
  const MultiLaurent& G(int n, VertexId v, long mu) const;
  /// straight from the recursive definition at the given mu, no reduction
  MultiLaurent F_unreduced(int n, VertexId v, long mu) const;
  MultiLaurent G_unreduced(int n, VertexId v, long mu) const;

  /// right side of the level-n formula, mu-sum contracted along the level
  /// tree (cross phases only depend on residues mod 2k)
  MultiLaurent phi_at_level(int n) const;
  /// the same sum enumerated over prod_v Z/2k|M_v| (small cases only)
  MultiLaurent phi_at_level_direct(int n) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Laurent expansion of F_deg(zeta_2k^mu e^t) in the variable `var`
MultiLaurent f_base_series(int deg, long k, long mu, int nvars, int var, int cap);

struct PhiLaurent {
  long k = 0;
  int cap = 0;
  std::vector<VertexId> vars;  // variable order
  MultiLaurent series;
};

/// lower bounds min(0, 2 - deg v) of every monomial of phi
std::vector<int> phi_lower_bounds(const PlumbingGraph& g);
/// level < 0 means the last level of the chain (Pruned only)
PhiLaurent phi_gamma_k(const PlumbingGraph& g, long k, int cap, PhiAlgo algo, int level = -1);

struct PhiReport {
  bool decisive = false;       // the window contains every m with sum m <= 0
  bool no_negative = false;    // (i)
  bool only_zero = false;      // (ii)
  bool b0_matches = false;     // (iii)
  std::vector<std::string> violations;
  CyclotomicNumber b0;
  CyclotomicNumber gauss_sum;
  bool passed() const { return decisive && no_negative && only_zero && b0_matches; }
  bool inconclusive() const { return !decisive; }
};
PhiReport check_phi_properties(const PhiLaurent& p, const PlumbingGraph& g);

/// every monomial is >= 0, or is >= (-1, 1, 1, 1) with the center first
bool y_graph_shape_ok(const PhiLaurent& p, const PlumbingGraph& g, VertexId center);

}  // namespace gppv
