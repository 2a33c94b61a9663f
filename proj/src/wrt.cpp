#include "gppv/wrt.hpp"

#include <algorithm>
#include <cmath>

#include "gppv/kernels.hpp"

namespace gppv {

namespace {

constexpr mpfr_prec_t kGuard = 32;

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

std::vector<long> residues(long k) {
  std::vector<long> r;
  for (long mu = 0; mu < 2 * k; ++mu)
    if (mu % k != 0) r.push_back(mu);
  return r;
}

void check_input(const PlumbingGraph& g, long k) {
  if (k < 2) throw Error("WRT needs k >= 2");
  require_valid(g);
  if (!g.integer_weights()) throw Error("WRT needs integer weights");
}

struct Tree {
  std::vector<int> order;   // children before parents, root last
  std::vector<int> parent;  // -1 at the root
  std::vector<std::vector<int>> children;
};

Tree rooted(const PlumbingGraph& g, std::optional<VertexId> root) {
  const auto& ids = g.vertices();
  const int n = static_cast<int>(ids.size());
  int r = 0;
  if (root) {
    r = static_cast<int>(g.index_of(*root));
  } else {
    for (int i = 1; i < n; ++i)
      if (g.degree(ids[i]) > g.degree(ids[r])) r = i;
  }
  Tree t;
  t.parent.assign(n, -1);
  t.children.assign(n, {});
  std::vector<int> stack{r}, seen(n, 0), pre;
  seen[r] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    pre.push_back(v);
    for (VertexId u : g.neighbors(ids[v])) {
      int j = static_cast<int>(g.index_of(u));
      if (seen[j]) continue;
      seen[j] = 1;
      t.parent[j] = v;
      t.children[v].push_back(j);
      stack.push_back(j);
    }
  }
  t.order.assign(pre.rbegin(), pre.rend());
  return t;
}

std::vector<std::vector<long>> int_weights(const PlumbingGraph& g) {
  IntMatrix w = to_integer(linking_matrix(g));
  std::vector<std::vector<long>> out(w.rows(), std::vector<long>(w.cols()));
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j) out[i][j] = to_long(w(i, j));
  return out;
}

std::vector<BigComplex> phase_table(long k, mpfr_prec_t prec) {
  std::vector<BigComplex> ph;
  ph.reserve(static_cast<std::size_t>(4 * k));
  for (long j = 0; j < 4 * k; ++j) ph.push_back(BigComplex::e(Rational(j, 4 * k), prec));
  return ph;
}

BigComplex f_numeric(int deg, long k, long mu, mpfr_prec_t prec) {
  BigComplex z = BigComplex::e(Rational(mu, 2 * k), prec);
  return pow_si(z - z.conj(), 2 - deg);
}

BigComplex round_to(const BigComplex& z, mpfr_prec_t prec) {
  BigComplex r(prec);
  mpfr_set(r.re.raw(), z.re.raw(), MPFR_RNDN);
  mpfr_set(r.im.raw(), z.im.raw(), MPFR_RNDN);
  return r;
}

// prod_v sum_r |F_v(r)|: bound on the sum of absolute values of all terms
BigFloat absolute_mass(const std::vector<std::vector<BigComplex>>& fval, mpfr_prec_t prec) {
  BigFloat p(1L, prec);
  for (const auto& fv : fval) {
    BigFloat s(0L, prec);
    for (const auto& f : fv) s = s + f.abs();
    p = p * s;
  }
  return p;
}

WrtValue finish(const PlumbingGraph& g, long k, mpfr_prec_t prec, const BigComplex& sum, const BigFloat& mass,
                double ops) {
  const mpfr_prec_t wp = prec + kGuard;
  BigComplex pref = wrt_prefactor(g, k, wp);
  WrtValue out;
  out.k = k;
  out.precision = prec;
  out.value = round_to(pref * sum, prec);
  BigFloat cert = pref.abs() * mass * BigFloat(ops, wp);
  cert = ldexp(cert, -(wp - 2));
  // rounding to the output precision
  cert = cert + ldexp(out.value.abs(), -(prec - 1));
  out.certificate = BigFloat(0L, prec);
  mpfr_set(out.certificate.raw(), cert.raw(), MPFR_RNDU);
  out.homology_sphere = abs(determinant(linking_matrix(g))) == 1;
  return out;
}

}  // namespace

BigComplex wrt_prefactor(const PlumbingGraph& g, long k, mpfr_prec_t prec) {
  const long n = static_cast<long>(g.size());
  Rational s = 0;
  for (VertexId v : g.vertices()) s += g.weight(v) + 3;
  BigComplex num = BigComplex::e(Rational(n, 8) - s / Rational(4 * k), prec);
  BigFloat root = pow_si(sqrt(BigFloat(2 * k, prec)), n);
  BigComplex z = BigComplex::e(Rational(1, 2 * k), prec);
  BigComplex den = (z - z.conj()) * (root * BigFloat(2L, prec));
  return num / den;
}

WrtValue wrt_naive(const PlumbingGraph& g, long k, mpfr_prec_t prec) {
  check_input(g, k);
  const mpfr_prec_t wp = prec + kGuard;
  kernels::GaussSumInput in;
  in.k = k;
  in.w = int_weights(g);
  in.residues = residues(k);
  in.phase4k = phase_table(k, wp);
  for (VertexId v : g.vertices()) {
    std::vector<BigComplex> fv;
    for (long mu : in.residues) fv.push_back(f_numeric(g.degree(v), k, mu, wp));
    in.fval.push_back(std::move(fv));
  }
  BigComplex sum = kernels::gauss_sum_parallel(in, wp);
  double terms = std::pow(static_cast<double>(in.residues.size()), static_cast<double>(g.size()));
  return finish(g, k, prec, sum, absolute_mass(in.fval, wp), terms + static_cast<double>(g.size()) + 4);
}

WrtValue wrt_contracted(const PlumbingGraph& g, long k, mpfr_prec_t prec, std::optional<VertexId> root) {
  check_input(g, k);
  const mpfr_prec_t wp = prec + kGuard;
  const auto w = int_weights(g);
  const auto res = residues(k);
  const auto ph = phase_table(k, wp);
  const auto& ids = g.vertices();
  const std::size_t n = ids.size(), m = res.size();
  Tree t = rooted(g, root);

  std::vector<std::vector<BigComplex>> fval(n), local(n), msg(n);
  for (std::size_t v = 0; v < n; ++v)
    for (long mu : res) fval[v].push_back(f_numeric(g.degree(ids[v]), k, mu, wp));

  BigComplex total(wp);
  for (int v : t.order) {
    // local[v][r] = e(w_v mu^2 / 4k) F_v(mu) prod_children msg_c[r]
    local[v].assign(m, BigComplex(wp));
    for (std::size_t r = 0; r < m; ++r) {
      BigComplex a = ph[static_cast<std::size_t>(mod(w[v][v] * res[r] * res[r], 4 * k))] * fval[v][r];
      for (int c : t.children[v]) a *= msg[c][r];
      local[v][r] = a;
    }
    if (t.parent[v] < 0) {
      for (std::size_t r = 0; r < m; ++r) total += local[v][r];
      continue;
    }
    msg[v].assign(m, BigComplex(wp));
#pragma omp parallel for schedule(static)
    for (std::size_t rp = 0; rp < m; ++rp) {
      BigComplex s(wp);
      for (std::size_t r = 0; r < m; ++r)
        s += local[v][r] * ph[static_cast<std::size_t>(mod(2 * res[r] * res[rp], 4 * k))];
      msg[v][rp] = s;
    }
    for (int c : t.children[v]) std::vector<BigComplex>().swap(msg[c]);
  }
  double ops = static_cast<double>(n) * static_cast<double>(m + n + 4);
  return finish(g, k, prec, total, absolute_mass(fval, wp), ops);
}

CyclotomicNumber f_at_root(int deg, long k, long mu) {
  const auto order = static_cast<std::uint32_t>(2 * k);
  if (deg == 2) return CyclotomicNumber(1);
  // zeta^mu - zeta^-mu
  CyclotomicNumber base = CyclotomicNumber::root(order, mu) - CyclotomicNumber::root(order, -mu);
  if (deg < 2) {
    CyclotomicNumber r(1);
    for (int i = 0; i < 2 - deg; ++i) r *= base;
    return r;
  }
  if (mod(mu, k) == 0) throw Error("F_v has a pole at zeta_2k^mu for mu in kZ");
  // 1/(zeta^mu - zeta^-mu) = zeta^mu / (zeta^{2mu} - 1)
  CyclotomicNumber inv = CyclotomicNumber::inverse_root_minus_one(order, 2 * mu).times_root(order, mu);
  CyclotomicNumber r(1);
  for (int i = 0; i < deg - 2; ++i) r *= inv;
  return r;
}

CyclotomicNumber wrt_gauss_sum_exact_naive(const PlumbingGraph& g, long k) {
  check_input(g, k);
  const auto w = int_weights(g);
  const auto res = residues(k);
  const auto& ids = g.vertices();
  const std::size_t n = ids.size(), m = res.size();
  std::vector<std::vector<CyclotomicNumber>> fval(n);
  for (std::size_t v = 0; v < n; ++v)
    for (long mu : res) fval[v].push_back(f_at_root(g.degree(ids[v]), k, mu));
  const auto order = static_cast<std::uint32_t>(4 * k);
  std::vector<std::size_t> idx(n, 0);
  CyclotomicNumber total;
  for (;;) {
    long e = 0;
    CyclotomicNumber f(1);
    for (std::size_t i = 0; i < n; ++i) {
      f *= fval[i][idx[i]];
      for (std::size_t j = 0; j < n; ++j) e += w[i][j] * res[idx[i]] * res[idx[j]];
    }
    total += f.times_root(order, mod(e, 4 * k));
    std::size_t i = 0;
    while (i < n && ++idx[i] == m) idx[i++] = 0;
    if (i == n) break;
  }
  return total.canonical();
}

CyclotomicNumber wrt_gauss_sum_exact(const PlumbingGraph& g, long k) {
  check_input(g, k);
  const auto w = int_weights(g);
  const auto res = residues(k);
  const auto& ids = g.vertices();
  const std::size_t n = ids.size(), m = res.size();
  const auto order = static_cast<std::uint32_t>(4 * k);
  Tree t = rooted(g, std::nullopt);
  std::vector<std::vector<CyclotomicNumber>> fval(n), msg(n);
  for (std::size_t v = 0; v < n; ++v)
    for (long mu : res) fval[v].push_back(f_at_root(g.degree(ids[v]), k, mu));

  CyclotomicNumber total;
  for (int v : t.order) {
    std::vector<CyclotomicNumber> local(m);
    for (std::size_t r = 0; r < m; ++r) {
      CyclotomicNumber a = fval[v][r].times_root(order, mod(w[v][v] * res[r] * res[r], 4 * k));
      for (int c : t.children[v]) a *= msg[c][r];
      local[r] = a.canonical();
    }
    if (t.parent[v] < 0) {
      for (const auto& a : local) total += a;
      continue;
    }
    msg[v].assign(m, CyclotomicNumber());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t rp = 0; rp < m; ++rp) {
      CyclotomicNumber s;
      for (std::size_t r = 0; r < m; ++r) s += local[r].times_root(order, mod(2 * res[r] * res[rp], 4 * k));
      msg[v][rp] = s.canonical();
    }
  }
  return total.canonical();
}

}  // namespace gppv
