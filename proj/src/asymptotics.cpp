#include "gppv/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "gppv/pruning.hpp"
#include "gppv/zhat.hpp"

namespace gppv {

Rational em_b(int m, int n, int l) {
  if (m < 0 || n < 0 || l < 0 || l > m + n + 1) return 0;
  Rational s = 0;
  for (int k = 0; k <= l; ++k) {
    Rational term(binomial(m + n - k, n), factorial(static_cast<unsigned>(k)) * factorial(static_cast<unsigned>(l - k)));
    s += (k % 2) ? -term : term;
  }
  return Rational(factorial(static_cast<unsigned>(m)), factorial(static_cast<unsigned>(m + n + 1 - l))) * s;
}

Rational em_coefficients(int m, int n, const Rational& alpha, const Rational& lambda) {
  if (m < 0) throw Error("em_coefficients: m must be >= 0");
  if (n >= 0) {
    Rational s = 0, ap = 1;
    for (int l = 0; l <= m + n + 1; ++l) {
      s += em_b(m, n, l) * bernoulli_polynomial(static_cast<unsigned>(m + n + 1 - l), lambda) * ap;
      ap *= alpha;
    }
    return s;
  }
  if (n >= -m - 1) {
    const int e = m + n + 1;
    return Rational(factorial(static_cast<unsigned>(m)), factorial(static_cast<unsigned>(e))) * pow(Rational(-alpha), e);
  }
  return 0;
}

namespace {

MultiLaurent univariate(int nvars, int var, int low, const std::vector<Rational>& c, int cap) {
  std::vector<int> lower(static_cast<std::size_t>(nvars), 0);
  lower[static_cast<std::size_t>(var)] = low;
  MultiLaurent out(nvars, lower, cap);
  for (std::size_t j = 0; j < c.size(); ++j)
    if (c[j] != 0) out.add(unit_monomial(var, low + static_cast<int>(j)), CyclotomicNumber(c[j]));
  return out;
}

std::vector<Rational> exp_coeffs(const Rational& a, int n) {
  std::vector<Rational> c(static_cast<std::size_t>(std::max(n, 0)));
  Rational x = 1;
  for (int j = 0; j < n; ++j) {
    c[static_cast<std::size_t>(j)] = x;
    x *= a / Rational(j + 1);
  }
  return c;
}

std::vector<Rational> mul(const std::vector<Rational>& a, const std::vector<Rational>& b, std::size_t n) {
  std::vector<Rational> r(n);
  for (std::size_t i = 0; i < a.size() && i < n; ++i)
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j] += a[i] * b[j];
  return r;
}

}  // namespace

MultiLaurent phi_F_generator(const std::vector<Progression>& prog, const Polynomial& p,
                             const std::vector<Rational>& u, int cap) {
  const int n = static_cast<int>(prog.size());
  if (n == 0 || n > kMaxVars) throw Error("phi_F_generator: bad number of variables");
  if (!u.empty() && static_cast<int>(u.size()) != n) throw Error("phi_F_generator: shift size mismatch");
  int degp = 0;
  for (const auto& term : p) {
    if (static_cast<int>(term.exps.size()) != n) throw Error("phi_F_generator: polynomial arity mismatch");
    int d = 0;
    for (int e : term.exps) d += e;
    degp = std::max(degp, d);
  }
  const int wcap = cap + degp + n;
  MultiLaurent base = MultiLaurent::constant(n, CyclotomicNumber(1), wcap);
  for (int i = 0; i < n; ++i) {
    const auto& pr = prog[static_cast<std::size_t>(i)];
    if (pr.k == 0) {
      base = base * univariate(n, i, 0, exp_coeffs(Rational(pr.a), wcap + 1), wcap);
      continue;
    }
    // 1/(1 - e^{kt}) = -(1/(kt)) sum B_j (kt)^j / j!
    const int len = wcap + 2;
    std::vector<Rational> c(static_cast<std::size_t>(len));
    Rational kp = Rational(1) / Rational(pr.k);
    for (int j = 0; j < len; ++j) {
      c[static_cast<std::size_t>(j)] = -bernoulli_number(static_cast<unsigned>(j)) * kp / Rational(factorial(static_cast<unsigned>(j)));
      kp *= pr.k;
    }
    c = mul(c, exp_coeffs(Rational(pr.a), len), static_cast<std::size_t>(len));
    base = base * univariate(n, i, -1, c, wcap);
  }
  MultiLaurent out;
  for (const auto& term : p) {
    MultiLaurent d = base;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < term.exps[static_cast<std::size_t>(i)]; ++j) d = d.derivative(i);
    out.axpy(CyclotomicNumber(term.c), d);
  }
  if (!u.empty())
    for (int i = 0; i < n; ++i)
      if (u[static_cast<std::size_t>(i)] != 0)
        out = out * univariate(n, i, 0, exp_coeffs(u[static_cast<std::size_t>(i)], wcap + 1), wcap + 1);
  out = out.truncated(cap);
  out.prune_zeros();
  return out;
}

// ---------------------------------------------------------------------------

BigComplex HadamardSeries::coefficient(int d, mpfr_prec_t prec) const {
  const int i = d - low;
  if (i < 0 || i >= static_cast<int>(coeffs.size())) return BigComplex(prec);
  return coeffs[static_cast<std::size_t>(i)];
}

BigComplex HadamardSeries::eval(const BigFloat& t, int max_degree, mpfr_prec_t prec) const {
  BigComplex acc(prec);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const int d = low + static_cast<int>(i);
    if (d > max_degree) break;
    acc += coeffs[i] * pow_si(t, d);
  }
  return acc;
}

HadamardSeries hadamard(const MultiLaurent& phi, const std::function<BigComplex(const Monomial&)>& f,
                        mpfr_prec_t prec) {
  HadamardSeries h;
  int lo = INT_MAX;
  for (const auto& [m, c] : phi.terms())
    if (!c.is_zero()) lo = std::min(lo, total_degree(m));
  if (lo == INT_MAX) lo = 0;
  h.low = lo;
  const int hi = std::max(phi.cap(), lo);
  h.coeffs.assign(static_cast<std::size_t>(hi - lo + 1), BigComplex(prec));
  for (const auto& [m, c] : phi.terms()) {
    if (c.is_zero()) continue;
    const int d = total_degree(m);
    if (d > hi) continue;
    h.coeffs[static_cast<std::size_t>(d - lo)] += c.embed(prec) * f(m);
  }
  return h;
}

// ---------------------------------------------------------------------------
// quadrature

namespace {

struct Node {
  BigFloat x, w;
};

// tanh-sinh nodes on [0, R] with step 2^-level
std::vector<Node> ts_nodes(const BigFloat& radius, int level, mpfr_prec_t prec) {
  std::vector<Node> out;
  const BigFloat h = ldexp(BigFloat(1L, prec), -level);
  const BigFloat half_pi = BigFloat::pi(prec) / BigFloat(2L, prec);
  const BigFloat tiny = ldexp(BigFloat(1L, prec), -static_cast<long>(prec) - 20);
  for (int sgn : {0, 1, -1}) {
    for (long j = (sgn == 0 ? 0 : 1);; ++j) {
      BigFloat u = h * BigFloat(static_cast<long>(sgn == 0 ? 0 : sgn * j), prec);
      BigFloat eu = exp(u), emu = exp(-u);
      BigFloat sh = (eu - emu) / BigFloat(2L, prec), ch = (eu + emu) / BigFloat(2L, prec);
      BigFloat v = half_pi * sh;
      BigFloat ev = exp(v), emv = exp(-v);
      BigFloat chv = (ev + emv) / BigFloat(2L, prec);
      BigFloat x = radius / (BigFloat(1L, prec) + emv * emv);
      BigFloat w = radius * h * half_pi * ch / (BigFloat(2L, prec) * chv * chv);
      if (!(w > tiny) || !w.is_finite()) break;
      out.push_back({x, w});
      if (sgn == 0) break;
    }
  }
  return out;
}

}  // namespace

QuadratureResult tanh_sinh(const std::function<BigFloat(const std::vector<BigFloat>&)>& f, int dim,
                           const BigFloat& radius, mpfr_prec_t prec, int max_levels) {
  if (dim < 1 || dim > 3) throw Error("tanh_sinh: dimension must be 1..3");
  QuadratureResult r;
  BigFloat prev(prec);
  bool have_prev = false;
  for (int level = 2; level <= max_levels; ++level) {
    auto nodes = ts_nodes(radius, level, prec);
    BigFloat acc(0L, prec);
    std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
    std::vector<BigFloat> x(static_cast<std::size_t>(dim), BigFloat(prec));
    for (;;) {
      BigFloat w(1L, prec);
      for (int d = 0; d < dim; ++d) {
        x[static_cast<std::size_t>(d)] = nodes[idx[static_cast<std::size_t>(d)]].x;
        w *= nodes[idx[static_cast<std::size_t>(d)]].w;
      }
      acc += w * f(x);
      int d = 0;
      while (d < dim && ++idx[static_cast<std::size_t>(d)] == nodes.size()) idx[static_cast<std::size_t>(d++)] = 0;
      if (d == dim) break;
    }
    r.levels = level;
    if (have_prev) {
      BigFloat diff = abs(acc - prev);
      r.error = diff.to_double();
      BigFloat scale = max(abs(acc), BigFloat(1L, prec));
      if (diff <= ldexp(scale, -static_cast<long>(prec) * 3 / 5)) {
        r.value = acc;
        r.converged = true;
        return r;
      }
    }
    prev = acc;
    have_prev = true;
  }
  r.value = prev;
  return r;
}

// ---------------------------------------------------------------------------
// Gaussian oracle

namespace {

using Poly = std::map<std::vector<int>, Rational>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r[e] += ca * cb;
    }
  for (auto it = r.begin(); it != r.end();) it = (it->second == 0) ? r.erase(it) : std::next(it);
  return r;
}

// smallest eigenvalue of a small symmetric double matrix (Jacobi sweeps)
double min_eigenvalue(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::fabs(a[p][q]) < 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  double m = a[0][0];
  for (std::size_t i = 1; i < n; ++i) m = std::min(m, a[i][i]);
  return m;
}

}  // namespace

struct GaussianOracle::Impl {
  RatMatrix a;  // W^{-1}
  std::size_t n = 0;
  mpfr_prec_t prec = 128;
  Poly g;
  mutable std::mutex mu;
  mutable std::vector<Poly> powers;  // g^j
  mutable std::map<std::vector<int>, Rational> rec;
  mutable std::map<std::vector<int>, BigFloat> values;
  // moments int_{[0,inf)^J} y^alpha exp(y^T A_JJ y / 4) dy
  mutable std::map<std::pair<std::vector<std::size_t>, std::vector<int>>, BigFloat> moments;
  mutable double last_err = 0;
  using Grid = std::vector<std::pair<std::vector<BigFloat>, BigFloat>>;
  mutable std::map<std::pair<std::vector<std::size_t>, int>, Grid> grids;

  // tensor tanh-sinh grid on [0, R]^J with the Gaussian folded into the weights
  const Grid& grid_for(const std::vector<std::size_t>& J, const std::vector<std::vector<BigFloat>>& aj,
                       const BigFloat& radius, int level, mpfr_prec_t wp) const {
    auto key = std::make_pair(J, level);
    auto it = grids.find(key);
    if (it != grids.end()) return it->second;
    const std::size_t d = J.size();
    auto nodes = ts_nodes(radius, level, wp);
    Grid g;
    std::vector<std::size_t> idx(d, 0);
    for (;;) {
      std::vector<BigFloat> y;
      BigFloat w(1L, wp), q(0L, wp);
      for (std::size_t i = 0; i < d; ++i) {
        y.push_back(nodes[idx[i]].x);
        w *= nodes[idx[i]].w;
      }
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) q += aj[i][j] * y[i] * y[j];
      g.emplace_back(std::move(y), w * exp(q));
      std::size_t i = 0;
      while (i < d && ++idx[i] == nodes.size()) idx[i++] = 0;
      if (i == d) break;
    }
    return grids.emplace(key, std::move(g)).first->second;
  }

  const Poly& power(std::size_t j) const {
    if (powers.empty()) powers.push_back(Poly{{std::vector<int>(n, 0), Rational(1)}});
    while (powers.size() <= j) powers.push_back(poly_mul(powers.back(), g));
    return powers[j];
  }

  Rational exact(const std::vector<int>& m) const {
    int s = 0;
    Integer mf = 1;
    for (int x : m) {
      if (x < 0) throw Error("exact Gaussian derivative needs m >= 0");
      s += x;
      mf *= factorial(static_cast<unsigned>(x));
    }
    if (s % 2) return 0;
    const std::size_t j = static_cast<std::size_t>(s / 2);
    const Poly& p = power(j);
    auto it = p.find(m);
    if (it == p.end()) return 0;
    return it->second * Rational(mf) / Rational(factorial(static_cast<unsigned>(j)));
  }

  Rational recursive(const std::vector<int>& m) const {
    int s = 0;
    for (int x : m) s += x;
    if (s == 0) return 1;
    if (s % 2) return 0;
    auto it = rec.find(m);
    if (it != rec.end()) return it->second;
    std::size_t i = 0;
    while (m[i] == 0) ++i;
    std::vector<int> base = m;
    base[i] -= 1;
    Rational acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (base[j] == 0 || a(i, j) == 0) continue;
      std::vector<int> mm = base;
      mm[j] -= 1;
      acc += a(i, j) / 2 * base[j] * recursive(mm);
    }
    rec[m] = acc;
    return acc;
  }

  // polynomial P with d^m e^g = P e^g
  Poly derivative_poly(const std::vector<int>& m) const {
    Poly p{{std::vector<int>(n, 0), Rational(1)}};
    for (std::size_t i = 0; i < n; ++i)
      for (int r = 0; r < m[i]; ++r) {
        Poly q;
        for (const auto& [e, c] : p) {
          if (e[i] > 0) {
            auto f = e;
            f[i] -= 1;
            q[f] += c * e[i];
          }
          for (std::size_t j = 0; j < n; ++j) {
            if (a(i, j) == 0) continue;
            auto f = e;
            f[j] += 1;
            q[f] += c * a(i, j) / 2;
          }
        }
        for (auto it = q.begin(); it != q.end();) it = (it->second == 0) ? q.erase(it) : std::next(it);
        p = std::move(q);
      }
    return p;
  }

  BigFloat moment(const std::vector<std::size_t>& J, const std::vector<int>& alpha) const {
    auto key = std::make_pair(J, alpha);
    auto it = moments.find(key);
    if (it != moments.end()) return it->second;
    const mpfr_prec_t wp = prec + 32;
    const std::size_t d = J.size();
    std::vector<std::vector<double>> mat(d, std::vector<double>(d));
    std::vector<std::vector<BigFloat>> aj(d, std::vector<BigFloat>(d, BigFloat(wp)));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        mat[i][j] = -a(J[i], J[j]).get_d() / 4;
        aj[i][j] = BigFloat(a(J[i], J[j]) / 4, wp);
      }
    const double c = min_eigenvalue(mat);
    if (!(c > 0)) throw Error("Gaussian oracle: form is not negative definite on the integration block");
    // one radius per block so grids can be shared; covers moments up to degree 40
    const int pdeg = 40;
    double r2 = (static_cast<double>(wp) * std::log(2.0) + 30) / c;
    r2 += pdeg * std::log(std::max(1.0, std::sqrt(r2))) / c;
    const BigFloat radius(std::sqrt(r2) * 1.05, wp);
    const int max_level = d == 1 ? 9 : 7;
    BigFloat prev(wp);
    bool done = false;
    for (int level = 3; level <= max_level && !done; ++level) {
      const auto& grid = grid_for(J, aj, radius, level, wp);
      BigFloat acc(0L, wp);
      for (const auto& [y, wg] : grid) {
        BigFloat term = wg;
        for (std::size_t i = 0; i < d; ++i)
          if (alpha[i]) term *= pow_si(y[i], alpha[i]);
        acc += term;
      }
      if (level > 3) {
        BigFloat diff = abs(acc - prev);
        BigFloat scale = acc.is_zero() ? BigFloat(1L, wp) : abs(acc);
        // tanh-sinh roughly squares the error per halving, so the level
        // difference overestimates the error of the finer level
        if (diff <= ldexp(scale, -static_cast<long>(prec) * 3 / 5)) {
          last_err = std::max(last_err, (diff / scale).to_double());
          done = true;
        }
      }
      prev = acc;
    }
    if (!done) throw Error("Gaussian oracle: quadrature did not converge");
    moments.emplace(key, prev);
    return prev;
  }

  BigFloat value(const std::vector<int>& m) const {
    auto it = values.find(m);
    if (it != values.end()) return it->second;
    const mpfr_prec_t wp = prec + 32;
    std::vector<std::size_t> J;
    std::vector<int> mp(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i] < 0) J.push_back(i);
      else mp[i] = m[i];
    }
    BigFloat out(wp);
    if (J.empty()) {
      out = BigFloat(exact(m), wp);
    } else {
      Poly p = derivative_poly(mp);
      // (-1)^{sum n} prod y_j^{n_j - 1}/(n_j - 1)! P(y_J, 0) exp(...)
      Rational pref = 1;
      for (std::size_t j : J) {
        const int nj = -m[j];
        pref /= Rational(factorial(static_cast<unsigned>(nj - 1)));
        if (nj % 2) pref = -pref;
      }
      BigFloat acc(0L, wp);
      for (const auto& [e, c] : p) {
        bool restricted = true;
        for (std::size_t i = 0; i < n; ++i)
          if (e[i] && std::find(J.begin(), J.end(), i) == J.end()) restricted = false;
        if (!restricted) continue;
        std::vector<int> alpha;
        for (std::size_t j : J) alpha.push_back(e[j] - m[j] - 1);
        acc += BigFloat(c, wp) * moment(J, alpha);
      }
      out = acc * BigFloat(pref, wp);
    }
    values.emplace(m, out);
    return out;
  }
};

GaussianOracle::GaussianOracle(const RatMatrix& w, mpfr_prec_t prec) : impl_(std::make_unique<Impl>()) {
  impl_->a = inverse(w);
  impl_->n = w.rows();
  impl_->prec = prec;
  const std::size_t n = impl_->n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      if (impl_->a(i, j) == 0) continue;
      std::vector<int> e(n, 0);
      e[i] += 1;
      e[j] += 1;
      impl_->g[e] = (i == j) ? impl_->a(i, i) / 4 : impl_->a(i, j) / 2;
    }
}

GaussianOracle::~GaussianOracle() = default;

std::size_t GaussianOracle::dim() const { return impl_->n; }

Rational GaussianOracle::exact(const std::vector<int>& m) const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->exact(m);
}

Rational GaussianOracle::exact_recursive(const std::vector<int>& m) const {
  for (int x : m)
    if (x < 0) throw Error("exact Gaussian derivative needs m >= 0");
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->recursive(m);
}

BigFloat GaussianOracle::value(const std::vector<int>& m) const {
  if (m.size() != impl_->n) throw Error("Gaussian oracle: index length mismatch");
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->value(m);
}

BigComplex GaussianOracle::operator()(const Monomial& m) const {
  std::vector<int> v(impl_->n);
  for (std::size_t i = 0; i < impl_->n; ++i) v[i] = m[i];
  BigFloat x = value(v);
  BigComplex out(impl_->prec);
  mpfr_set(out.re.raw(), x.raw(), MPFR_RNDN);
  return out;
}

double GaussianOracle::last_quadrature_error() const { return impl_->last_err; }

// ---------------------------------------------------------------------------
// 1-D harnesses

double loglog_slope(const std::vector<double>& t, const std::vector<double>& err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(err[i] > 0) || !(t[i] > 0)) continue;
    double x = std::log(t[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return 0;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

BigFloat poly_eval1(const Polynomial& p, const BigFloat& x, mpfr_prec_t prec) {
  BigFloat acc(0L, prec);
  for (const auto& term : p) acc += BigFloat(term.c, prec) * pow_si(x, term.exps.at(0));
  return acc;
}

void finish_report(Asymp1DReport& r, const std::vector<BigComplex>& lhs, const std::vector<Rational>& tgrid,
                   mpfr_prec_t prec) {
  int above = 0;
  for (std::size_t i = 0; i < tgrid.size(); ++i) {
    BigFloat t(tgrid[i], prec);
    BigComplex e = lhs[i] - r.expansion.eval(t, r.order - 1, prec);
    double err = e.abs().to_double();
    double floor = std::ldexp(std::max(1.0, lhs[i].abs().to_double()), -static_cast<int>(prec) + 40);
    r.t.push_back(tgrid[i].get_d());
    r.error.push_back(err);
    if (err > floor) ++above;
  }
  r.exponentially_small = above == 0;
  std::vector<double> tt, ee;
  for (std::size_t i = 0; i < r.t.size(); ++i) {
    double floor = std::ldexp(std::max(1.0, lhs[i].abs().to_double()), -static_cast<int>(prec) + 40);
    if (r.error[i] > floor) {
      tt.push_back(r.t[i]);
      ee.push_back(r.error[i]);
    }
  }
  r.slope = tt.size() >= 2 ? loglog_slope(tt, ee) : r.order;
}

}  // namespace

Asymp1DReport check_asymp_lim_1d(const Progression& prog, const Polynomial& p, const Rational& alpha,
                                 const Rational& c, int order, const std::vector<Rational>& tgrid,
                                 mpfr_prec_t prec) {
  if (c <= 0) throw Error("check_asymp_lim_1d: need c > 0");
  Asymp1DReport r;
  r.order = order;
  const mpfr_prec_t wp = prec + 32;
  MultiLaurent phi = phi_F_generator({prog}, p, {alpha}, order - 1);
  RatMatrix w(1, 1);
  w(0, 0) = Rational(-1) / (4 * c);
  GaussianOracle f(w, wp);
  r.expansion = hadamard(phi, [&](const Monomial& m) { return f(m); }, wp);
  std::vector<BigComplex> lhs;
  const double cutoff = static_cast<double>(wp) * std::log(2.0) + 60;
  for (const Rational& tq : tgrid) {
    BigFloat t(tq, wp), acc(0L, wp);
    const BigFloat ct2 = BigFloat(c, wp) * t * t;
    for (long j = 0;; ++j) {
      const long l = prog.a + prog.k * j;
      BigFloat x = BigFloat(Rational(l) + alpha, wp);
      BigFloat e = ct2 * x * x;
      acc += poly_eval1(p, BigFloat(l, wp), wp) * exp(-e);
      if (prog.k == 0) break;
      if (e.to_double() > cutoff + 4 * std::log(std::fabs(static_cast<double>(l)) + 2)) break;
    }
    BigComplex z(wp);
    z.re = acc;
    lhs.push_back(z);
  }
  finish_report(r, lhs, tgrid, prec);
  return r;
}

Asymp1DReport check_asymp_f_v_1d(int deg, long k, long mu, const Rational& c, int order,
                                 const std::vector<Rational>& tgrid, mpfr_prec_t prec) {
  Asymp1DReport r;
  r.order = order;
  const mpfr_prec_t wp = prec + 32;
  MultiLaurent phi = f_base_series(deg, k, mu, 1, 0, order - 1);
  if (deg % 2) phi *= CyclotomicNumber(-1);
  RatMatrix w(1, 1);
  w(0, 0) = Rational(-1) / (4 * c);
  GaussianOracle f(w, wp);
  r.expansion = hadamard(phi, [&](const Monomial& m) { return f(m); }, wp);
  std::vector<BigComplex> lhs;
  const double cutoff = static_cast<double>(wp) * std::log(2.0) + 60;
  for (const Rational& tq : tgrid) {
    BigFloat t(tq, wp);
    BigComplex acc(wp);
    const BigFloat ct2 = BigFloat(c, wp) * t * t;
    const long start = deg % 2;
    for (long a = start;; a += 2) {
      BigFloat e = ct2 * BigFloat(a * a, wp);
      for (long l : {a, -a}) {
        if (a == 0 && l < 0) continue;
        Rational fl = f_coeff(deg, l);
        if (fl == 0) continue;
        BigComplex term = BigComplex::e(Rational(mu * l, 2 * k), wp);
        term *= BigFloat(fl, wp) * exp(-e);
        acc += term;
      }
      if (a > deg + 2 && e.to_double() > cutoff + deg * std::log(static_cast<double>(a) + 2)) break;
    }
    lhs.push_back(acc);
  }
  finish_report(r, lhs, tgrid, prec);
  return r;
}

}  // namespace gppv
