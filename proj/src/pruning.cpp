#include "gppv/pruning.hpp"

#include <algorithm>
#include <climits>

#include "gppv/lattice.hpp"
#include "gppv/wrt.hpp"

namespace gppv {

PruneStep prune_once(const PlumbingGraph& g) {
  PruneStep out;
  if (g.size() <= 2) {
    out.graph = g;
    out.terminal = true;
    return out;
  }
  std::vector<VertexId> leaves;
  for (VertexId v : g.vertices())
    if (g.degree(v) == 1) leaves.push_back(v);
  for (VertexId v : g.vertices()) {
    if (g.degree(v) == 1) continue;
    Rational w = g.weight(v);
    for (VertexId i : leaves)
      if (g.has_edge(v, i)) {
        w -= Rational(1) / g.weight(i);
        out.removed[v].push_back(i);
      }
    out.graph.add_vertex(v, w);
  }
  for (const auto& [a, b] : g.edges())
    if (out.graph.has_vertex(a) && out.graph.has_vertex(b)) out.graph.add_edge(a, b);
  return out;
}

namespace {

std::map<VertexId, std::vector<VertexId>> level_leaves(const PlumbingGraph& g) {
  std::map<VertexId, std::vector<VertexId>> out;
  for (VertexId v : g.vertices()) {
    out[v];
    for (VertexId u : g.neighbors(v))
      if (g.degree(u) == 1) out[v].push_back(u);
  }
  return out;
}

}  // namespace

PruneChain prune_sequence(const PlumbingGraph& g) {
  require_valid(g);
  PruneChain chain;
  PrunedLevel l0;
  l0.graph = g;
  for (VertexId v : g.vertices()) {
    l0.M[v] = 1;
    l0.w_tilde[v] = g.weight(v).get_num();
    l0.subtree[v] = {v};
  }
  l0.leaves = level_leaves(g);
  l0.det = determinant(linking_matrix(g));
  chain.levels.push_back(std::move(l0));

  while (chain.levels.back().graph.size() > 2) {
    const PrunedLevel& cur = chain.levels.back();
    PruneStep step = prune_once(cur.graph);
    PrunedLevel next;
    next.n = cur.n + 1;
    next.graph = step.graph;
    Rational factor = 1;
    next.pruned_norm = cur.pruned_norm;
    for (VertexId v : next.graph.vertices()) {
      Integer m = cur.M.at(v);
      std::vector<VertexId> sub = {v};
      for (VertexId i : step.removed[v]) {
        m *= cur.w_tilde.at(i);
        next.pruned_norm *= abs(cur.M.at(i));
        factor /= cur.graph.weight(i);
        const auto& si = cur.subtree.at(i);
        sub.insert(sub.end(), si.begin(), si.end());
      }
      std::sort(sub.begin(), sub.end());
      next.M[v] = m;
      next.subtree[v] = sub;
      Rational wt = Rational(m) * next.graph.weight(v);
      if (!is_integer(wt)) chain.failures.push_back("w~ not integral at level " + std::to_string(next.n));
      next.w_tilde[v] = wt.get_num();
      if (next.graph.weight(v) >= 0) chain.failures.push_back("non-negative pruned weight at level " + std::to_string(next.n));
    }
    next.leaves = level_leaves(next.graph);
    next.det = determinant(linking_matrix(next.graph));
    if (next.det != cur.det * factor) chain.failures.push_back("determinant identity fails at level " + std::to_string(next.n));
    // (W^<n+1>)^{-1} is a submatrix of (W^<n>)^{-1}
    RatMatrix inv = inverse(linking_matrix(cur.graph));
    std::vector<std::size_t> idx;
    for (VertexId v : next.graph.vertices()) idx.push_back(cur.graph.index_of(v));
    if (submatrix(inv, idx, idx) != inverse(linking_matrix(next.graph)))
      chain.failures.push_back("inverse submatrix identity fails at level " + std::to_string(next.n));
    chain.levels.push_back(std::move(next));
  }
  return chain;
}

bool quadratic_identities_hold(const PlumbingGraph& g, const std::vector<Rational>& x) {
  if (g.size() < 3) throw Error("quadratic identity needs at least 3 vertices");
  PruneStep step = prune_once(g);
  const RatMatrix w = linking_matrix(g), w1 = linking_matrix(step.graph);
  std::vector<Rational> xp, z;
  Rational leaf_dual = 0, leaf_primal = 0;
  for (VertexId v : step.graph.vertices()) {
    const Rational xv = x[g.index_of(v)];
    Rational xd = xv;
    for (VertexId i : step.removed[v]) {
      const Rational xi = x[g.index_of(i)], wi = g.weight(i);
      xd -= xi / wi;
      leaf_dual += xi * xi / wi;
      Rational c = wi * xi + xv;
      leaf_primal += c * c / wi;
    }
    xp.push_back(xd);
    z.push_back(xv);
  }
  bool dual = dot(x, mat_vec(inverse(w), x)) == dot(xp, mat_vec(inverse(w1), xp)) + leaf_dual;
  bool primal = dot(x, mat_vec(w, x)) == dot(z, mat_vec(w1, z)) + leaf_primal;
  return dual && primal;
}

std::string to_string(PhiAlgo a) {
  switch (a) {
    case PhiAlgo::Naive: return "naive";
    case PhiAlgo::Tree: return "tree";
    case PhiAlgo::Pruned: return "pruned";
  }
  return "?";
}

PhiAlgo parse_phi_algo(const std::string& s) {
  if (s == "naive") return PhiAlgo::Naive;
  if (s == "tree") return PhiAlgo::Tree;
  if (s == "pruned") return PhiAlgo::Pruned;
  throw Error("unknown algorithm: " + s);
}

// ---------------------------------------------------------------------------
// base series

namespace {

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

using Series = std::vector<CyclotomicNumber>;  // c_0 + c_1 t + ...

Series mul(const Series& a, const Series& b, std::size_t n) {
  Series r(n);
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j].add_product(a[i], b[j]);
  }
  for (auto& c : r) c = c.canonical();
  return r;
}

Series inverse_series(const Series& a, std::size_t n, const CyclotomicNumber& inv0) {
  Series b(n);
  b[0] = inv0;
  for (std::size_t m = 1; m < n; ++m) {
    CyclotomicNumber s;
    for (std::size_t j = 1; j <= m && j < a.size(); ++j) s.add_product(a[j], b[m - j]);
    b[m] = (-(s * inv0)).canonical();
  }
  return b;
}

Series power(const Series& a, int e, std::size_t n) {
  Series r(n);
  r[0] = 1;
  for (int i = 0; i < e; ++i) r = mul(r, a, n);
  return r;
}

}  // namespace

MultiLaurent f_base_series(int deg, long k, long mu, int nvars, int var, int cap) {
  const auto order = static_cast<std::uint32_t>(2 * k);
  const long r = mod(mu, 2 * k);
  const bool pole = r % k == 0;
  const int low = pole ? 2 - deg : 0;
  std::vector<int> lower(static_cast<std::size_t>(nvars), 0);
  lower[static_cast<std::size_t>(var)] = low;
  MultiLaurent out(nvars, lower, cap);
  if (cap < low) return out;
  const std::size_t n = static_cast<std::size_t>(cap - low + 1);
  Series f;
  if (!pole) {
    // A(t) = zeta^r e^t - zeta^-r e^-t
    Series a(n);
    Rational fact = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (j) fact /= Rational(static_cast<long>(j));
      CyclotomicNumber c = CyclotomicNumber::root(order, r);
      if (j % 2) c += CyclotomicNumber::root(order, -r);
      else c -= CyclotomicNumber::root(order, -r);
      c *= fact;
      a[j] = c.canonical();
    }
    if (deg <= 2) {
      f = power(a, 2 - deg, n);
    } else {
      CyclotomicNumber inv0 = CyclotomicNumber::inverse_root_minus_one(order, 2 * r).times_root(order, r);
      f = power(inverse_series(a, n, inv0), deg - 2, n);
    }
  } else {
    // A = 2 eps sinh t = 2 eps t S(t), S = sinh(t)/t
    const long eps = (r == 0) ? 1 : -1;
    Series s(n);
    // sinh(t)/t = sum t^{2j}/(2j+1)!
    for (std::size_t j = 0; j < n; ++j) s[j] = (j % 2 == 0) ? CyclotomicNumber(Rational(1) / Rational(factorial(j + 1))) : CyclotomicNumber();
    const int e = 2 - deg;
    Series se;
    if (e >= 0) se = power(s, e, n);
    else se = power(inverse_series(s, n, CyclotomicNumber(1)), -e, n);
    Rational scale = pow(Rational(2 * eps), e);
    for (auto& c : se) c *= scale;
    f = se;
  }
  for (std::size_t j = 0; j < f.size() && j < n; ++j) {
    if (f[j].is_zero()) continue;
    out.add(unit_monomial(var, low + static_cast<int>(j)), f[j]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// pruned functions

struct PrunedFunctions::Impl {
  PlumbingGraph g;
  long k = 0;
  int cap = 0, wcap = 0, nvars = 0;
  PruneChain chain;
  std::map<VertexId, int> var;
  std::map<VertexId, int> deg0;
  mutable std::map<std::pair<int, VertexId>, std::vector<std::unique_ptr<MultiLaurent>>> fmemo, hmemo;

  const PrunedLevel& level(int n) const {
    if (n < 0 || n >= static_cast<int>(chain.levels.size())) throw Error("level out of range");
    return chain.levels[static_cast<std::size_t>(n)];
  }
  long absl(const Integer& z) const { return to_long(Integer(abs(z))); }

  MultiLaurent base(VertexId v, long mu) const { return f_base_series(deg0.at(v), k, mu, nvars, var.at(v), wcap); }

  const MultiLaurent& F(int n, VertexId v, long mu) const {
    const PrunedLevel& lv = level(n);
    const long period = 2 * k * absl(lv.M.at(v));
    const long r = mod(mu, period);
    auto& slot = fmemo[{n, v}];
    if (slot.empty()) slot.resize(static_cast<std::size_t>(period));
    auto& p = slot[static_cast<std::size_t>(r)];
    if (!p) {
      if (n == 0) {
        p = std::make_unique<MultiLaurent>(base(v, r));
      } else {
        MultiLaurent acc = F(n - 1, v, r);
        for (VertexId i : level(n - 1).leaves.at(v))
          if (!lv.graph.has_vertex(i)) acc = acc * G(n - 1, i, r);
        acc.prune_zeros();
        p = std::make_unique<MultiLaurent>(std::move(acc));
      }
    }
    return *p;
  }

  // H(s) = sum_{mu_i mod 2k|M_i|} e(w_i mu_i^2 / 4k) e(s mu_i / 2k) F(n, i, mu_i), s mod 2k
  const MultiLaurent& H(int n, VertexId i, long s) const {
    const PrunedLevel& lv = level(n);
    const Rational wi = lv.graph.weight(i);
    auto& slot = hmemo[{n, i}];
    if (slot.empty()) slot.resize(static_cast<std::size_t>(2 * k));
    auto& p = slot[static_cast<std::size_t>(mod(s, 2 * k))];
    if (!p) {
      const long range = 2 * k * absl(lv.M.at(i));
      MultiLaurent acc;
      for (long m = 0; m < range; ++m) {
        CyclotomicNumber ph = CyclotomicNumber::e(wi * m * m / (4 * k) + Rational(mod(s * m, 2 * k), 2 * k));
        acc.axpy(ph, F(n, i, m));
      }
      acc.prune_zeros();
      p = std::make_unique<MultiLaurent>(std::move(acc));
    }
    return *p;
  }

  MultiLaurent G(int n, VertexId i, long mu) const {
    const Rational wi = level(n).graph.weight(i);
    MultiLaurent out = H(n, i, mu);
    out *= CyclotomicNumber::e(Rational(mu) * mu / (4 * k * wi));
    return out;
  }

  MultiLaurent G_direct(int n, VertexId i, long mu, bool unreduced) const {
    const PrunedLevel& lv = level(n);
    const Rational wi = lv.graph.weight(i);
    const long range = 2 * k * absl(lv.M.at(i));
    MultiLaurent acc;
    for (long m = 0; m < range; ++m) {
      CyclotomicNumber ph = CyclotomicNumber::e((wi * m * m + 2 * mu * m) / (4 * k));
      if (unreduced) acc.axpy(ph, F_direct(n, i, m));
      else acc.axpy(ph, F(n, i, m));
    }
    acc *= CyclotomicNumber::e(Rational(mu) * mu / (4 * k * wi));
    acc.prune_zeros();
    return acc;
  }

  MultiLaurent F_direct(int n, VertexId v, long mu) const {
    if (n == 0) return base(v, mu);
    MultiLaurent acc = F_direct(n - 1, v, mu);
    for (VertexId i : level(n - 1).leaves.at(v))
      if (!level(n).graph.has_vertex(i)) acc = acc * G_direct(n - 1, i, mu, true);
    acc.prune_zeros();
    return acc;
  }

  Rational det_m(int n) const {
    Integer d = 1;
    for (const auto& [v, m] : level(n).M)
      if (level(n).graph.has_vertex(v)) d *= m;
    return Rational(abs(d) * level(n).pruned_norm);
  }

  MultiLaurent finish(MultiLaurent s, int n) const {
    s *= CyclotomicNumber(Rational(1) / det_m(n));
    s = s.truncated(cap);
    s.prune_zeros();
    return s;
  }

  MultiLaurent phi_tree(int n) const {
    const PrunedLevel& lv = level(n);
    const PlumbingGraph& h = lv.graph;
    const auto& ids = h.vertices();
    const std::size_t nv = ids.size();
    const std::size_t m = static_cast<std::size_t>(2 * k);
    std::size_t root = 0;
    for (std::size_t i = 1; i < nv; ++i)
      if (h.degree(ids[i]) > h.degree(ids[root])) root = i;
    std::vector<int> parent(nv, -1), seen(nv, 0);
    std::vector<std::vector<std::size_t>> children(nv);
    std::vector<std::size_t> stack{root}, pre;
    seen[root] = 1;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      pre.push_back(v);
      for (VertexId u : h.neighbors(ids[v])) {
        std::size_t j = h.index_of(u);
        if (seen[j]) continue;
        seen[j] = 1;
        parent[j] = static_cast<int>(v);
        children[v].push_back(j);
        stack.push_back(j);
      }
    }
    std::vector<std::vector<MultiLaurent>> msg(nv);
    MultiLaurent total;
    for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
      const std::size_t v = *it;
      const VertexId id = ids[v];
      const Rational wv = h.weight(id);
      const long range = 2 * k * absl(lv.M.at(id));
      // local sums grouped by mu mod 2k
      std::vector<MultiLaurent> local(m);
      for (long mu = 0; mu < range; ++mu)
        local[static_cast<std::size_t>(mu % (2 * k))].axpy(CyclotomicNumber::e(wv * mu * mu / (4 * k)), F(n, id, mu));
#pragma omp parallel for schedule(dynamic, 1)
      for (std::size_t s = 0; s < m; ++s) {
        for (std::size_t c : children[v]) local[s] = local[s] * msg[c][s];
        local[s].prune_zeros();
      }
      for (std::size_t c : children[v]) std::vector<MultiLaurent>().swap(msg[c]);
      if (parent[v] < 0) {
        for (const auto& l : local) total += l;
        continue;
      }
      msg[v].assign(m, MultiLaurent());
#pragma omp parallel for schedule(dynamic, 1)
      for (std::size_t r = 0; r < m; ++r) {
        MultiLaurent acc;
        for (std::size_t s = 0; s < m; ++s)
          acc.axpy(CyclotomicNumber::root(static_cast<std::uint32_t>(2 * k), static_cast<std::int64_t>((r * s) % m)), local[s]);
        acc.prune_zeros();
        msg[v][r] = std::move(acc);
      }
    }
    return finish(std::move(total), n);
  }

  MultiLaurent phi_direct(int n) const {
    const PrunedLevel& lv = level(n);
    const PlumbingGraph& h = lv.graph;
    const auto& ids = h.vertices();
    const std::size_t nv = ids.size();
    const RatMatrix w = linking_matrix(h);
    std::vector<long> range(nv), mu(nv, 0);
    for (std::size_t i = 0; i < nv; ++i) range[i] = 2 * k * absl(lv.M.at(ids[i]));
    MultiLaurent total;
    for (;;) {
      Rational q = 0;
      for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t j = 0; j < nv; ++j)
          if (w(i, j) != 0) q += w(i, j) * mu[i] * mu[j];
      MultiLaurent prod = F(n, ids[0], mu[0]);
      for (std::size_t i = 1; i < nv; ++i) prod = prod * F(n, ids[i], mu[i]);
      total.axpy(CyclotomicNumber::e(q / (4 * k)), prod);
      std::size_t i = 0;
      while (i < nv && ++mu[i] == range[i]) mu[i++] = 0;
      if (i == nv) break;
    }
    return finish(std::move(total), n);
  }
};

PrunedFunctions::PrunedFunctions(const PlumbingGraph& g, long k, int cap) : impl_(std::make_unique<Impl>()) {
  if (k < 1) throw Error("k must be positive");
  if (cap < 0) throw Error("phi window cap must be >= 0");
  if (!g.integer_weights()) throw Error("pruned functions need integer weights");
  impl_->g = g;
  impl_->k = k;
  impl_->cap = cap;
  impl_->chain = prune_sequence(g);
  if (!impl_->chain.ok()) throw Error("pruning invariants fail: " + impl_->chain.failures[0]);
  impl_->nvars = static_cast<int>(g.size());
  if (impl_->nvars > kMaxVars) throw Error("too many vertices for the series type");
  int poles = 0;
  for (VertexId v : g.vertices()) {
    impl_->var[v] = static_cast<int>(g.index_of(v));
    impl_->deg0[v] = g.degree(v);
    poles += std::max(0, g.degree(v) - 2);
  }
  impl_->wcap = cap + poles;
}

PrunedFunctions::~PrunedFunctions() = default;

const PlumbingGraph& PrunedFunctions::graph() const { return impl_->g; }
const PruneChain& PrunedFunctions::chain() const { return impl_->chain; }
long PrunedFunctions::k() const { return impl_->k; }
int PrunedFunctions::cap() const { return impl_->cap; }
int PrunedFunctions::working_cap() const { return impl_->wcap; }
int PrunedFunctions::variable(VertexId v) const { return impl_->var.at(v); }

const MultiLaurent& PrunedFunctions::F(int n, VertexId v, long mu) const { return impl_->F(n, v, mu); }

const MultiLaurent& PrunedFunctions::G(int n, VertexId v, long mu) const {
  const long period = 2 * impl_->k * impl_->absl(impl_->level(n).w_tilde.at(v));
  auto& slot = impl_->fmemo[{-1 - n, v}];  // G values share the memo under negative levels
  if (slot.empty()) slot.resize(static_cast<std::size_t>(period));
  auto& p = slot[static_cast<std::size_t>(mod(mu, period))];
  if (!p) p = std::make_unique<MultiLaurent>(impl_->G(n, v, mod(mu, period)));
  return *p;
}

MultiLaurent PrunedFunctions::F_unreduced(int n, VertexId v, long mu) const { return impl_->F_direct(n, v, mu); }
MultiLaurent PrunedFunctions::G_unreduced(int n, VertexId v, long mu) const {
  return impl_->G_direct(n, v, mu, true);
}

MultiLaurent PrunedFunctions::phi_at_level(int n) const { return impl_->phi_tree(n); }
MultiLaurent PrunedFunctions::phi_at_level_direct(int n) const { return impl_->phi_direct(n); }

// ---------------------------------------------------------------------------

std::vector<int> phi_lower_bounds(const PlumbingGraph& g) {
  std::vector<int> out;
  for (VertexId v : g.vertices()) out.push_back(std::min(0, 2 - g.degree(v)));
  return out;
}

PhiLaurent phi_gamma_k(const PlumbingGraph& g, long k, int cap, PhiAlgo algo, int level) {
  PrunedFunctions pf(g, k, cap);
  PhiLaurent out;
  out.k = k;
  out.cap = cap;
  out.vars = g.vertices();
  switch (algo) {
    case PhiAlgo::Naive: out.series = pf.phi_at_level_direct(0); break;
    case PhiAlgo::Tree: out.series = pf.phi_at_level(0); break;
    case PhiAlgo::Pruned: {
      const int last = static_cast<int>(pf.chain().levels.size()) - 1;
      out.series = pf.phi_at_level(level < 0 ? last : std::min(level, last));
      break;
    }
  }
  return out;
}

PhiReport check_phi_properties(const PhiLaurent& p, const PlumbingGraph& g) {
  PhiReport r;
  r.decisive = p.cap >= 0;
  r.no_negative = true;
  r.only_zero = true;
  for (const auto& [m, c] : p.series.terms()) {
    if (c.is_zero()) continue;
    const int d = total_degree(m);
    if (d < 0) {
      r.no_negative = false;
      r.violations.push_back("nonzero coefficient at total degree " + std::to_string(d));
    } else if (d == 0) {
      bool zero = true;
      for (int v = 0; v < p.series.nvars(); ++v) zero = zero && m[static_cast<std::size_t>(v)] == 0;
      if (!zero) {
        r.only_zero = false;
        r.violations.push_back("nonzero coefficient at a nonzero monomial of total degree 0");
      }
    }
  }
  r.b0 = p.series.coefficient(Monomial{}).canonical();
  r.gauss_sum = wrt_gauss_sum_exact(g, p.k);
  r.b0_matches = r.b0 == r.gauss_sum;
  if (!r.b0_matches) r.violations.push_back("B_0 differs from the restricted Gauss sum");
  return r;
}

bool y_graph_shape_ok(const PhiLaurent& p, const PlumbingGraph& g, VertexId center) {
  const std::size_t c = g.index_of(center);
  for (const auto& [m, coef] : p.series.terms()) {
    if (coef.is_zero()) continue;
    bool holo = true, polar = true;
    for (std::size_t v = 0; v < g.size(); ++v) {
      holo = holo && m[v] >= 0;
      polar = polar && (v == c ? m[v] >= -1 : m[v] >= 1);
    }
    if (!holo && !polar) return false;
  }
  return true;
}

}  // namespace gppv
