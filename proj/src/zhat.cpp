#include "gppv/zhat.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace gppv {

Rational f_coeff(int d, long l) {
  if (d < 0) throw Error("negative degree");
  switch (d) {
    case 0:
      if (l == 2 || l == -2) return 1;
      return l == 0 ? Rational(-2) : Rational(0);
    case 1:
      return (l == 1 || l == -1) ? Rational(-l) : Rational(0);
    case 2:
      return l == 0 ? Rational(1) : Rational(0);
    default: {
      long a = l < 0 ? -l : l;
      long r = a - (d - 2);
      if (r < 0 || r % 2 != 0) return 0;
      long m = r / 2;
      Rational c(binomial(m + d - 3, d - 3), 2);
      if (l < 0 && (d % 2 != 0)) c = -c;
      return c;
    }
  }
}

std::vector<BigComplex> f_coeff_oracle_range(int d, long lmin, long lmax, double eps, int points,
                                             mpfr_prec_t prec) {
  if (points < 16 || !(eps > 0 && eps < 1)) throw Error("f_coeff_oracle: bad quadrature parameters");
  const mpfr_prec_t wp = prec + 16;
  const std::size_t nl = static_cast<std::size_t>(lmax - lmin + 1);
  std::vector<BigComplex> acc(nl, BigComplex(wp));
  const BigFloat two_pi = BigFloat::pi(wp) * BigFloat(2L, wp);
  for (int side = 0; side < 2; ++side) {
    BigFloat radius = BigFloat(1L, wp) + (side == 0 ? BigFloat(eps, wp) : -BigFloat(eps, wp));
    for (int j = 0; j < points; ++j) {
      BigFloat theta = two_pi * BigFloat(Rational(j, points), wp);
      BigComplex z = BigComplex::expi(theta) * radius;
      BigComplex fz = z - BigComplex(1L, wp) / z;
      fz = pow_si(fz, 2 - d);
      // F(z) z^l over the circle: dz/(2 pi i z) = dtheta/(2 pi)
      BigComplex zp = pow_si(z, lmin);
      for (std::size_t i = 0; i < nl; ++i) {
        acc[i] += fz * zp;
        zp *= z;
      }
    }
  }
  BigFloat norm(static_cast<long>(2 * points), wp);
  std::vector<BigComplex> out;
  for (auto& a : acc) {
    a.re /= norm;
    a.im /= norm;
    BigComplex r(prec);
    mpfr_set(r.re.raw(), a.re.raw(), MPFR_RNDN);
    mpfr_set(r.im.raw(), a.im.raw(), MPFR_RNDN);
    out.push_back(r);
  }
  return out;
}

BigComplex f_coeff_oracle(int d, long l, double eps, int points, mpfr_prec_t prec) {
  return f_coeff_oracle_range(d, l, l, eps, points, prec)[0];
}

Rational zhat_prefactor_exponent(const PlumbingGraph& g) {
  Rational s = 0;
  for (VertexId v : g.vertices()) s += g.weight(v) + 3;
  return -s / 4;
}

namespace {

IntMatrix twice(const RatMatrix& w) {
  IntMatrix m = to_integer(w);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= 2;
  return m;
}

void require_zhat_input(const PlumbingGraph& g) {
  require_valid(g);
  if (!g.integer_weights()) throw Error("Zhat needs integer vertex weights");
}

// exponent numerator over 4D for Q(l)/4 + shift, Q = qnum / D
std::int64_t exponent_numerator(__int128 qnum, const Rational& shift, long d) {
  Rational e = Rational(shift * 4 * d);
  return static_cast<std::int64_t>(qnum) + to_long_exact(e);
}

// 2 F_{d,l} for d >= 3, F_{d,l} otherwise; INT64_MIN when the binomial does not fit
std::int64_t scaled_f_coeff(int d, long l) {
  if (d <= 2) {
    if (d == 0) return (l == 2 || l == -2) ? 1 : (l == 0 ? -2 : 0);
    if (d == 1) return (l == 1 || l == -1) ? -l : 0;
    return l == 0 ? 1 : 0;
  }
  long a = l < 0 ? -l : l;
  long r = a - (d - 2);
  if (r < 0 || r % 2 != 0) return 0;
  long m = r / 2;
  // binom(m + d - 3, d - 3)
  __int128 b = 1;
  for (long j = 1; j <= d - 3; ++j) {
    b = b * (m + j) / j;
    if (b > INT64_MAX) return INT64_MIN;
  }
  std::int64_t c = static_cast<std::int64_t>(b);
  return (l < 0 && (d % 2 != 0)) ? -c : c;
}

Rational f_product(const std::vector<int>& deg, const IntVec& l) {
  Rational p = 1;
  for (std::size_t v = 0; v < l.size() && p != 0; ++v) p *= f_coeff(deg[v], l[v]);
  return p;
}

// F_{d,l} vanishes off these values (degrees <= 2) or off one parity
std::vector<CoordinateChoice> support_choice(const std::vector<int>& deg) {
  std::vector<CoordinateChoice> choice(deg.size());
  for (std::size_t v = 0; v < deg.size(); ++v) {
    switch (deg[v]) {
      case 0: choice[v].values = {-2, 0, 2}; break;
      case 1: choice[v].values = {-1, 1}; break;
      case 2: choice[v].values = {0}; break;
      default:
        choice[v].free = true;
        choice[v].parity = deg[v] % 2;
    }
  }
  return choice;
}

}  // namespace

CosetSystem zhat_cosets(const PlumbingGraph& g) {
  require_zhat_input(g);
  std::vector<int> deg = degree_vector(g);
  IntVec delta(deg.begin(), deg.end());
  return coset_reps(twice(linking_matrix(g)), delta);
}

std::vector<PuiseuxSeries> zhat_all(const PlumbingGraph& g, const Rational& max_exponent) {
  CosetSystem cs = zhat_cosets(g);
  RatMatrix w = linking_matrix(g);
  std::vector<int> deg = degree_vector(g);
  const long d = to_long(Rational(abs(determinant(w))).get_num());
  const std::int64_t denom = 4 * d;
  const Rational shift = zhat_prefactor_exponent(g);
  std::vector<PuiseuxSeries> out(cs.size(), PuiseuxSeries(denom, max_exponent));

  const std::vector<CoordinateChoice> choice = support_choice(deg);
  // accumulate c * 2^{#nodes} as integers per (class, exponent); most
  // products fit in 64 bits, the rest go through Integer
  std::vector<std::unordered_map<std::int64_t, Integer>> acc(cs.size());
  long nodes = 0;
  for (int dv : deg) nodes += dv >= 3;
  const Integer scale = Integer(1) << static_cast<unsigned>(nodes);
  const bool one_class = cs.size() == 1;
  const std::int64_t shift_num = exponent_numerator(0, shift, d);
  enumerate_restricted_ellipsoid(w, choice, max_exponent - shift, [&](const IntVec& l, __int128 qnum) {
    std::int64_t p = 1;
    bool small = true;
    for (std::size_t v = 0; v < l.size(); ++v) {
      std::int64_t c = scaled_f_coeff(deg[v], l[v]);
      if (c == 0) return;
      if (c == INT64_MIN || __builtin_mul_overflow(p, c, &p)) {
        small = false;
        break;
      }
    }
    long idx = one_class ? 0 : cs.index_of(l);
    if (idx < 0) throw Error("internal: lattice point outside the parity classes");
    const std::int64_t e = static_cast<std::int64_t>(qnum) + shift_num;
    if (small) {
      acc[static_cast<std::size_t>(idx)][e] += Integer(static_cast<long>(p));
    } else {
      Rational f = f_product(deg, l) * Rational(scale);
      if (f != 0) acc[static_cast<std::size_t>(idx)][e] += f.get_num();
    }
  });
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (const auto& [n, c] : acc[i]) {
      Rational q(c, scale);
      q.canonicalize();
      out[i].add_term(n, q);
    }
  return out;
}

ZhatTable zhat_table(const PlumbingGraph& g, const Rational& max_exponent) {
  CosetSystem cs = zhat_cosets(g);
  RatMatrix w = linking_matrix(g);
  std::vector<int> deg = degree_vector(g);
  const long d = to_long(Rational(abs(determinant(w))).get_num());
  const Rational shift = zhat_prefactor_exponent(g);
  ZhatTable tab;
  tab.denom = 4 * d;
  long nodes = 0;
  for (int dv : deg) nodes += dv >= 3;
  if (nodes > 62) throw Error("zhat_table: too many nodes");
  tab.scale = std::int64_t{1} << nodes;
  const std::int64_t nmax = to_long(floor(max_exponent * tab.denom));
  std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> raw(cs.size());
  const bool one_class = cs.size() == 1;
  const std::int64_t shift_num = exponent_numerator(0, shift, d);
  enumerate_restricted_ellipsoid(w, support_choice(deg), max_exponent - shift, [&](const IntVec& l, __int128 qnum) {
    std::int64_t p = 1;
    for (std::size_t v = 0; v < l.size(); ++v) {
      std::int64_t c = scaled_f_coeff(deg[v], l[v]);
      if (c == 0) return;
      if (c == INT64_MIN || __builtin_mul_overflow(p, c, &p)) throw Error("zhat_table: coefficient exceeds 64 bits");
    }
    const std::int64_t e = static_cast<std::int64_t>(qnum) + shift_num;
    if (e > nmax) return;
    long idx = one_class ? 0 : cs.index_of(l);
    if (idx < 0) throw Error("internal: lattice point outside the parity classes");
    raw[static_cast<std::size_t>(idx)].emplace_back(e, p);
  });
  tab.n.resize(cs.size());
  tab.c.resize(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    auto& r = raw[i];
    std::sort(r.begin(), r.end());
    for (std::size_t j = 0; j < r.size();) {
      std::int64_t e = r[j].first, sum = 0;
      for (; j < r.size() && r[j].first == e; ++j)
        if (__builtin_add_overflow(sum, r[j].second, &sum)) throw Error("zhat_table: coefficient exceeds 64 bits");
      if (sum != 0) {
        tab.n[i].push_back(e);
        tab.c[i].push_back(sum);
      }
    }
    r.clear();
    r.shrink_to_fit();
  }
  return tab;
}

PuiseuxSeries zhat_series(const PlumbingGraph& g, const IntVec& b, const Rational& max_exponent) {
  CosetSystem cs = zhat_cosets(g);
  const long d = to_long(Rational(abs(determinant(linking_matrix(g)))).get_num());
  long idx = cs.index_of(b);
  if (idx < 0) return PuiseuxSeries(4 * d, max_exponent);
  return zhat_all(g, max_exponent)[static_cast<std::size_t>(idx)];
}

PuiseuxSeries zhat_series_box(const PlumbingGraph& g, const IntVec& b, const Rational& max_exponent) {
  require_zhat_input(g);
  RatMatrix w = linking_matrix(g);
  std::vector<int> deg = degree_vector(g);
  const long d = to_long(Rational(abs(determinant(w))).get_num());
  const Rational shift = zhat_prefactor_exponent(g);
  PuiseuxSeries out(4 * d, max_exponent);
  QFormData qf(w);
  for (const IntVec& l : enumerate_coset_in_ellipsoid(w, b, max_exponent - shift)) {
    Rational f = f_product(deg, l);
    if (f != 0) out.add_term(exponent_numerator(qf.numerator(l), shift, d), f);
  }
  return out;
}

}  // namespace gppv
