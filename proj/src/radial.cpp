#include "gppv/radial.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "gppv/kernels.hpp"
#include "gppv/lattice.hpp"
#include "gppv/pruning.hpp"
#include "gppv/zhat.hpp"

namespace gppv {

namespace {

// mass of the coefficients up to x grows like x^gamma
double growth_exponent(const PlumbingGraph& g) {
  double r = 0, poly = 0;
  for (VertexId v : g.vertices()) {
    const int d = g.degree(v);
    if (d >= 3) {
      r += 1;
      poly += (d - 3) / 2.0;
    }
  }
  return r / 2 + poly;
}

// int_0^inf (1 + s/(tN))^{gamma-1} e^{-s} ds, trapezoid on [0, 80]
double tail_integral(double gamma, double tn) {
  const int n = 1600;
  const double h = 80.0 / n;
  double acc = 0;
  for (int i = 0; i <= n; ++i) {
    const double s = i * h;
    const double f = std::pow(1 + s / tn, gamma - 1) * std::exp(-s);
    acc += (i == 0 || i == n) ? f / 2 : f;
  }
  return acc * h;
}

}  // namespace

RadialSum::RadialSum(const PlumbingGraph& g, const Rational& max_exponent) : g_(g), max_exponent_(max_exponent) {
  require_valid(g);
  if (!g.integer_weights()) throw Error("radial sum needs integer weights");
  const RatMatrix w = linking_matrix(g);
  winv_ = inverse(w);
  a_reps_ = coset_reps(to_integer(w)).reps();
  b_reps_ = zhat_cosets(g).reps();
  zhat_ = zhat_table(g, max_exponent);
  growth_ = growth_exponent(g);
  for (std::size_t b = 0; b < zhat_.n.size(); ++b) {
    double mass = 0;
    for (std::int64_t c : zhat_.c[b]) mass += std::fabs(static_cast<double>(c));
    shell_.push_back(mass / static_cast<double>(zhat_.scale));
  }
}

Rational RadialSum::phase_exponent(long k, std::size_t a, std::size_t b) const {
  std::vector<Rational> av(a_reps_[a].begin(), a_reps_[a].end()), bv(b_reps_[b].begin(), b_reps_[b].end());
  const auto wa = mat_vec(winv_, av);
  Rational x = -Rational(k) * dot(av, wa) - dot(wa, bv);
  return frac_part(x);
}

std::vector<BigComplex> RadialSum::phases(long k, mpfr_prec_t prec) const {
  std::vector<BigComplex> out;
  for (std::size_t b = 0; b < b_reps_.size(); ++b) {
    BigComplex c(prec);
    for (std::size_t a = 0; a < a_reps_.size(); ++a) c += BigComplex::e(phase_exponent(k, a, b), prec);
    out.push_back(c);
  }
  return out;
}

double RadialSum::tail_estimate(long k, const Rational& t, double safety) const {
  (void)k;  // |phase| <= number of a classes for every k
  if (growth_ == 0) return 0;  // finite q-series
  const double n = max_exponent_.get_d(), td = t.get_d();
  if (n <= 0) return HUGE_VAL;
  double mass = 0;
  for (double m : shell_) mass += m;
  // dM ~ gamma M(N)/N (x/N)^{gamma-1} dx beyond N
  const double lead = std::log(growth_ * mass / n) - td * n - std::log(td);
  return safety * static_cast<double>(a_reps_.size()) * std::exp(lead) * tail_integral(growth_, td * n);
}

RadialSample RadialSum::sample(long k, const Rational& t, mpfr_prec_t prec, double safety) const {
  if (t <= 0) throw Error("radial sum needs t > 0");
  const mpfr_prec_t wp = prec + 32;
  std::vector<BigComplex> c = phases(k, wp);
  BigFloat tb(t, wp);
  BigComplex acc(wp);
  for (std::size_t b = 0; b < zhat_.n.size(); ++b) {
    if (c[b].abs() <= ldexp(BigFloat(1L, wp), -static_cast<long>(wp) + 8)) continue;
    acc += c[b] * kernels::qseries_eval_parallel(zhat_.n[b], zhat_.c[b], zhat_.denom, k, tb, wp);
  }
  const BigFloat scale(static_cast<long>(zhat_.scale), wp);
  acc.re /= scale;
  acc.im /= scale;
  RadialSample s;
  s.t = t;
  s.value = BigComplex(prec);
  mpfr_set(s.value.re.raw(), acc.re.raw(), MPFR_RNDN);
  mpfr_set(s.value.im.raw(), acc.im.raw(), MPFR_RNDN);
  s.max_exponent = max_exponent_;
  s.safety = safety;
  s.tail = tail_estimate(k, t, safety);
  return s;
}

Rational radial_truncation(const PlumbingGraph& g, const Rational& t_min, double target) {
  if (t_min <= 0 || !(target > 0)) throw Error("radial_truncation: bad arguments");
  const double gamma = growth_exponent(g), t = t_min.get_d();
  double n = std::log(1 / target) / t;
  for (int it = 0; it < 8; ++it) n = (std::log(1 / target) + gamma * std::log(std::max(n, 2.0)) + 8) / t;
  return Rational(static_cast<long>(std::ceil(n)));
}

RadialSample radial_sum(const PlumbingGraph& g, long k, const Rational& t, const Rational& max_exponent,
                        mpfr_prec_t prec) {
  return RadialSum(g, max_exponent).sample(k, t, prec);
}

// ---------------------------------------------------------------------------

Extrapolation extrapolate(const std::vector<BigFloat>& s, const std::vector<BigComplex>& values, int degree,
                          mpfr_prec_t prec) {
  const std::size_t n = s.size(), m = static_cast<std::size_t>(degree) + 1;
  if (degree < 0 || n < m + 1 || values.size() != n) throw Error("extrapolate: need at least degree + 2 samples");
  const mpfr_prec_t wp = prec + 64;
  // design matrix with unit-norm columns
  std::vector<std::vector<BigFloat>> x(n, std::vector<BigFloat>(m, BigFloat(wp)));
  for (std::size_t i = 0; i < n; ++i) {
    BigFloat p(1L, wp);
    for (std::size_t j = 0; j < m; ++j) {
      x[i][j] = p;
      p *= s[i];
    }
  }
  std::vector<BigFloat> scale(m, BigFloat(wp));
  for (std::size_t j = 0; j < m; ++j) {
    BigFloat nn(0L, wp);
    for (std::size_t i = 0; i < n; ++i) nn += x[i][j] * x[i][j];
    scale[j] = sqrt(nn);
    for (std::size_t i = 0; i < n; ++i) x[i][j] /= scale[j];
  }
  std::vector<BigFloat> yr(n, BigFloat(wp)), yi(n, BigFloat(wp));
  for (std::size_t i = 0; i < n; ++i) {
    mpfr_set(yr[i].raw(), values[i].re.raw(), MPFR_RNDN);
    mpfr_set(yi[i].raw(), values[i].im.raw(), MPFR_RNDN);
  }
  const auto y0r = yr, y0i = yi;
  const auto x0 = x;
  // Householder QR
  for (std::size_t j = 0; j < m; ++j) {
    BigFloat norm(0L, wp);
    for (std::size_t i = j; i < n; ++i) norm += x[i][j] * x[i][j];
    norm = sqrt(norm);
    if (norm.is_zero()) continue;
    BigFloat alpha = x[j][j].sign() > 0 ? -norm : norm;
    std::vector<BigFloat> v(n, BigFloat(0L, wp));
    for (std::size_t i = j; i < n; ++i) v[i] = x[i][j];
    v[j] -= alpha;
    BigFloat vv(0L, wp);
    for (std::size_t i = j; i < n; ++i) vv += v[i] * v[i];
    if (vv.is_zero()) continue;
    auto reflect = [&](auto& col_get) {
      BigFloat d(0L, wp);
      for (std::size_t i = j; i < n; ++i) d += v[i] * col_get(i);
      BigFloat f = BigFloat(2L, wp) * d / vv;
      for (std::size_t i = j; i < n; ++i) col_get(i) -= f * v[i];
    };
    for (std::size_t c = j; c < m; ++c) {
      auto get = [&](std::size_t i) -> BigFloat& { return x[i][c]; };
      reflect(get);
    }
    auto gr = [&](std::size_t i) -> BigFloat& { return yr[i]; };
    auto gi = [&](std::size_t i) -> BigFloat& { return yi[i]; };
    reflect(gr);
    reflect(gi);
  }
  double rmax = 0, rmin = HUGE_VAL;
  for (std::size_t j = 0; j < m; ++j) {
    double r = std::fabs(x[j][j].to_double());
    rmax = std::max(rmax, r);
    rmin = std::min(rmin, r);
  }
  std::vector<BigFloat> cr(m, BigFloat(wp)), ci(m, BigFloat(wp));
  for (std::size_t jj = m; jj-- > 0;) {
    BigFloat ar = yr[jj], ai = yi[jj];
    for (std::size_t c = jj + 1; c < m; ++c) {
      ar -= x[jj][c] * cr[c];
      ai -= x[jj][c] * ci[c];
    }
    cr[jj] = ar / x[jj][jj];
    ci[jj] = ai / x[jj][jj];
  }
  Extrapolation out;
  out.condition = rmin > 0 ? rmax / rmin : HUGE_VAL;
  out.ill_conditioned = !(out.condition < 1e12);
  BigFloat res(0L, wp);
  for (std::size_t i = 0; i < n; ++i) {
    BigFloat fr(0L, wp), fi(0L, wp);
    for (std::size_t j = 0; j < m; ++j) {
      fr += x0[i][j] * cr[j];
      fi += x0[i][j] * ci[j];
    }
    fr -= y0r[i];
    fi -= y0i[i];
    res += fr * fr + fi * fi;
  }
  out.residual = sqrt(res).to_double();
  for (std::size_t j = 0; j < m; ++j) {
    BigComplex c(prec);
    mpfr_set(c.re.raw(), (cr[j] / scale[j]).raw(), MPFR_RNDN);
    mpfr_set(c.im.raw(), (ci[j] / scale[j]).raw(), MPFR_RNDN);
    out.coeffs.push_back(c);
  }
  out.limit = out.coeffs[0];
  out.error = out.residual;
  return out;
}

Extrapolation extrapolate(const std::vector<RadialSample>& samples, int degree, mpfr_prec_t prec, bool even_powers) {
  std::vector<BigFloat> s;
  std::vector<BigComplex> v;
  double tail = 0;
  for (const auto& x : samples) {
    BigFloat t(x.t, prec + 64);
    s.push_back(even_powers ? t : sqrt(t));
    v.push_back(x.value);
    tail = std::max(tail, x.tail);
  }
  Extrapolation e = extrapolate(s, v, degree, prec);
  e.tail = tail;
  e.error = e.residual + tail;
  return e;
}

double radial_scale(const PlumbingGraph& g) {
  const RatMatrix wi = inverse(linking_matrix(g));
  const std::size_t n = wi.rows();
  // power iteration on the positive definite -W^-1
  std::vector<double> x(n, 1.0), y(n);
  double lam = 0;
  for (int it = 0; it < 500; ++it) {
    double norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = 0;
      for (std::size_t j = 0; j < n; ++j) y[i] -= wi(i, j).get_d() * x[j];
      norm += y[i] * y[i];
    }
    norm = std::sqrt(norm);
    const double prev = lam;
    lam = 0;
    for (std::size_t i = 0; i < n; ++i) lam += x[i] * y[i];
    double xx = 0;
    for (double v : x) xx += v * v;
    lam /= xx;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
    if (it > 5 && std::fabs(lam - prev) <= 1e-12 * lam) break;
  }
  return lam;
}

std::vector<Rational> radial_grid(const RadialConfig& cfg, const PlumbingGraph& g, long k) {
  if (cfg.samples < cfg.degree + 2) throw Error("radial grid: need samples >= degree + 2");
  if (!(cfg.u0 > 0) || cfg.ratio <= 0 || cfg.ratio >= 1) throw Error("radial grid: need u0 > 0 and 0 < ratio < 1");
  if (k < 1) throw Error("radial grid: need k >= 1");
  // s_0 rounded to a rational with a power-of-two denominator
  const double s0 = cfg.u0 / (static_cast<double>(k) * std::sqrt(radial_scale(g)));
  const long den = 1L << 24;
  Rational x(std::max(1L, std::lround(s0 * den)), den);
  std::vector<Rational> s;
  for (int j = 0; j < cfg.samples; ++j) {
    s.push_back(x);
    x *= cfg.ratio;
  }
  return s;
}

Rational radial_truncation(const PlumbingGraph& g, const RadialConfig& cfg, const std::vector<long>& ks) {
  Rational tmin = -1;
  for (long k : ks) {
    const Rational s = radial_grid(cfg, g, k).back();
    if (tmin < 0 || s * s < tmin) tmin = s * s;
  }
  if (tmin < 0) throw Error("radial_truncation: no levels given");
  return radial_truncation(g, tmin, cfg.tail_target);
}

// ---------------------------------------------------------------------------

namespace {

double rel(const BigComplex& a, const BigComplex& b) {
  const double d = (a - b).abs().to_double(), m = b.abs().to_double();
  return m > 1e-300 ? d / m : d;
}

}  // namespace

VerifyReport verify_main_theorem(const PlumbingGraph& g, long k, const VerifyConfig& cfg, const RadialSum* shared) {
  auto start = std::chrono::steady_clock::now();
  require_valid(g);
  if (k < 2) throw Error("verify needs k >= 2");
  const RadialConfig& rc = cfg.radial;
  const mpfr_prec_t prec = rc.prec;
  VerifyReport r;
  r.k = k;
  r.vertices = g.size();
  r.tol = cfg.tol > 0 ? cfg.tol : (g.size() <= 4 ? 1e-4 : 1e-3);

  const auto sgrid = radial_grid(rc, g, k);
  std::unique_ptr<RadialSum> own;
  if (!shared) {
    own = std::make_unique<RadialSum>(g, radial_truncation(g, rc, {k}));
    shared = own.get();
  }
  r.samples.resize(sgrid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t j = 0; j < sgrid.size(); ++j) r.samples[j] = shared->sample(k, sgrid[j] * sgrid[j], prec, rc.safety);
  r.fit = extrapolate(r.samples, rc.degree, prec, rc.even_powers);

  const BigFloat det(Rational(abs(determinant(linking_matrix(g)))), prec);
  BigComplex z = BigComplex::e(Rational(1, 2 * k), prec);
  BigComplex denom = (z - z.conj()) * (BigFloat(2L, prec) * sqrt(det));
  r.rhs = r.fit.limit / denom;
  r.lhs = wrt_contracted(g, k, prec);
  r.rel_error = rel(r.rhs, r.lhs.value);

  const CyclotomicNumber b0 = wrt_gauss_sum_exact(g, k);
  r.exact_rhs = wrt_prefactor(g, k, prec) * b0.embed(prec);
  r.exact_rel_error = rel(r.exact_rhs, r.lhs.value);
  if (cfg.phi_route) {
    PhiLaurent p = phi_gamma_k(g, k, 0, PhiAlgo::Pruned);
    r.phi_b0_checked = true;
    r.phi_b0_matches = p.series.coefficient(Monomial{}).canonical() == b0;
  }
  r.passed = r.rel_error <= r.tol && r.exact_rel_error <= 1e-20 && (!r.phi_b0_checked || r.phi_b0_matches);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

HadamardCheck check_radial_hadamard(const PlumbingGraph& g, long k, int D, const std::vector<Rational>& s_grid,
                                    const RadialConfig& cfg) {
  require_valid(g);
  const mpfr_prec_t prec = cfg.prec, wp = prec + 32;
  HadamardCheck h;
  h.D = D;
  PhiLaurent p = phi_gamma_k(g, k, D, PhiAlgo::Pruned);
  const RatMatrix w = linking_matrix(g);
  GaussianOracle f(w, wp);
  h.series = hadamard(p.series, [&](const Monomial& m) { return f(m); }, wp);
  h.no_negative_powers = true;
  for (int d = h.series.low; d < 0; ++d)
    if (h.series.coefficient(d, wp).abs() > ldexp(BigFloat(1L, wp), -static_cast<long>(prec) + 40))
      h.no_negative_powers = false;

  Rational smin = s_grid[0];
  for (const auto& s : s_grid) smin = std::min(smin, s);
  RadialSum rs(g, radial_truncation(g, smin * smin, cfg.tail_target));
  const long n = static_cast<long>(g.size());
  const BigFloat det(Rational(abs(determinant(w))), wp);
  BigComplex pref = BigComplex::e(Rational(n, 8), wp);
  pref *= sqrt(det) / pow_si(sqrt(BigFloat(2 * k, wp)), n);
  Rational shift = 0;
  for (VertexId v : g.vertices()) shift += g.weight(v) + 3;
  shift /= 4;
  h.t.resize(s_grid.size());
  h.diff.resize(s_grid.size());
  h.magnitude.resize(s_grid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t j = 0; j < s_grid.size(); ++j) {
    const Rational t = s_grid[j] * s_grid[j];
    RadialSample smp = rs.sample(k, t, wp, cfg.safety);
    // radial sum times q^{sum(w+3)/4} at q = zeta_k e^-t
    BigComplex lhs = smp.value * BigComplex::e(shift / k, wp);
    lhs *= exp(-(BigFloat(t, wp) * BigFloat(shift, wp)));
    BigComplex rhs = pref * h.series.eval(BigFloat(s_grid[j], wp), D, wp);
    h.t[j] = t.get_d();
    h.diff[j] = (lhs - rhs).abs().to_double();
    h.magnitude[j] = lhs.abs().to_double();
  }
  h.slope = loglog_slope(h.t, h.diff);
  return h;
}

}  // namespace gppv
