#include "gppv/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace gppv {

Rational det_w(const RatMatrix& w) { return determinant(w); }
RatMatrix w_inverse(const RatMatrix& w) { return inverse(w); }

Rational q_form(const RatMatrix& w, const std::vector<Rational>& l) {
  return -dot(l, mat_vec(inverse(w), l));
}

Rational q_form(const RatMatrix& w, const IntVec& l) {
  std::vector<Rational> x(l.begin(), l.end());
  return q_form(w, x);
}

Rational gershgorin_bound(const RatMatrix& w) {
  Rational best = 0;
  for (std::size_t i = 0; i < w.rows(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < w.cols(); ++j) s += abs(w(i, j));
    best = std::max(best, s);
  }
  return best;
}

IntMatrix integer_matrix(const RatMatrix& w) { return to_integer(w); }

namespace {

long fdiv_long(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::vector<std::vector<long>> to_long_rows(const IntMatrix& m) {
  std::vector<std::vector<long>> r(m.rows(), std::vector<long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = to_long(m(i, j));
  return r;
}

// canonical point of x modulo the lattice with lower-triangular basis h
IntVec hnf_reduce(const std::vector<std::vector<long>>& h, IntVec x) {
  const std::size_t n = h.size();
  for (std::size_t i = 0; i < n; ++i) {
    long q = fdiv_long(x[i], h[i][i]);
    if (q == 0) continue;
    for (std::size_t k = i; k < n; ++k) x[k] -= q * h[k][i];
  }
  return x;
}

long isqrt_ceil(const Rational& x) {
  if (x <= 0) return 0;
  Integer c = floor(x);
  if (Rational(c) < x) c += 1;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), c.get_mpz_t());
  while (Rational(r * r) < x) r += 1;
  return to_long(r);
}

}  // namespace

CosetSystem::CosetSystem(const IntMatrix& basis, std::optional<IntVec> parity) : basis_(basis) {
  const std::size_t n = basis.rows();
  if (basis.cols() != n) throw Error("coset basis must be square");
  Integer det = determinant(basis);
  if (det == 0) throw Error("coset basis is not full rank");
  hnf_ = hermite_normal_form(basis);
  hnf_long_ = to_long_rows(hnf_);
  SmithForm snf = smith_normal_form(basis);
  Integer prod = 1;
  for (std::size_t i = 0; i < n; ++i) {
    invariants_.push_back(snf.D(i, i));
    prod *= snf.D(i, i);
  }
  if (prod != abs(det)) throw Error("Smith form invariant factors do not multiply to |det|");

  std::vector<std::vector<long>> par_h;
  if (parity) {
    if (parity->size() != n) throw Error("parity vector has the wrong size");
    IntMatrix gen(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      gen(i, i) = 2;
      for (std::size_t j = 0; j < n; ++j) gen(i, n + j) = basis(i, j);
    }
    par_h = to_long_rows(hermite_normal_form(gen));
  }
  // mixed-radix walk over the HNF box
  IntVec x(n, 0);
  while (true) {
    bool keep = true;
    if (parity) {
      IntVec d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = x[i] - (*parity)[i];
      IntVec red = hnf_reduce(par_h, d);
      keep = std::all_of(red.begin(), red.end(), [](long v) { return v == 0; });
    }
    if (keep) {
      index_[x] = static_cast<long>(reps_.size());
      reps_.push_back(x);
    }
    std::size_t i = 0;
    while (i < n) {
      if (++x[i] < hnf_long_[i][i]) break;
      x[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  if (parity && reps_.empty()) throw Error("parity filter left no classes");
}

IntVec CosetSystem::reduce(const IntVec& x) const { return hnf_reduce(hnf_long_, x); }

bool CosetSystem::contains(const IntVec& x) const {
  IntVec r = reduce(x);
  return std::all_of(r.begin(), r.end(), [](long v) { return v == 0; });
}

bool CosetSystem::equivalent(const IntVec& x, const IntVec& y) const {
  IntVec d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return contains(d);
}

long CosetSystem::index_of(const IntVec& x) const {
  auto it = index_.find(reduce(x));
  return it == index_.end() ? -1 : it->second;
}

CosetSystem coset_reps(const IntMatrix& basis, std::optional<IntVec> parity) {
  return CosetSystem(basis, std::move(parity));
}

QFormData::QFormData(const RatMatrix& w) : n(w.rows()) {
  if (!is_integral(w)) throw Error("integer quadratic form data needs an integer matrix");
  Rational det = determinant(w);
  if (det == 0) throw Error("singular linking matrix");
  RatMatrix inv = inverse(w);
  d = to_long(Rational(abs(det)).get_num());
  a.assign(n, std::vector<long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational v = -inv(i, j) * Rational(d);
      a[i][j] = to_long_exact(v);
    }
}

__int128 QFormData::numerator(const IntVec& l) const {
  __int128 s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (l[i] == 0) continue;
    __int128 row = 0;
    for (std::size_t j = 0; j < n; ++j) row += static_cast<__int128>(a[i][j]) * l[j];
    s += row * l[i];
  }
  return s;
}

namespace {

// floor of a rational as __int128
__int128 floor128(const Rational& x) {
  Integer f = floor(x);
  if (!f.fits_slong_p()) throw Error("enumeration bound too large");
  return f.get_si();
}

}  // namespace

std::vector<IntVec> enumerate_coset_in_ellipsoid(const RatMatrix& w, const IntVec& b, const Rational& bound) {
  if (bound < 0) throw Error("ellipsoid bound must be non-negative");
  const std::size_t n = w.rows();
  QFormData qf(w);
  IntMatrix two_w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) two_w(i, j) = 2 * w(i, j).get_num();
  auto h = to_long_rows(hermite_normal_form(two_w));
  const long r = isqrt_ceil(4 * bound * gershgorin_bound(w));
  const __int128 limit = floor128(4 * bound * Rational(qf.d));
  std::vector<IntVec> out;
  IntVec l(n), z(n);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      if (qf.numerator(l) <= limit) out.push_back(l);
      return;
    }
    long c = b[i];
    for (std::size_t j = 0; j < i; ++j) c += h[i][j] * z[j];
    long lo = -fdiv_long(r + c, h[i][i]);  // ceil((-r - c)/h)
    long hi = fdiv_long(r - c, h[i][i]);
    for (long zi = lo; zi <= hi; ++zi) {
      z[i] = zi;
      l[i] = c + h[i][i] * zi;
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

void enumerate_restricted_ellipsoid(const RatMatrix& w, const std::vector<CoordinateChoice>& choice,
                                    const Rational& bound,
                                    const std::function<void(const IntVec&, __int128)>& emit) {
  const std::size_t n = w.rows();
  if (choice.size() != n) throw Error("coordinate choice has the wrong size");
  QFormData qf(w);
  const __int128 limit = floor128(4 * bound * Rational(qf.d));
  if (limit < 0) return;
  std::vector<std::size_t> fr, fx;
  for (std::size_t v = 0; v < n; ++v) (choice[v].free ? fr : fx).push_back(v);
  const std::size_t r = fr.size();

  // Cholesky A_ff = R^T R in double precision
  std::vector<std::vector<double>> af(r, std::vector<double>(r)), R(r, std::vector<double>(r, 0.0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) af[i][j] = static_cast<double>(qf.a[fr[i]][fr[j]]);
  for (std::size_t i = 0; i < r; ++i) {
    double s = af[i][i];
    for (std::size_t k = 0; k < i; ++k) s -= R[k][i] * R[k][i];
    if (s <= 0) throw Error("quadratic form is not positive definite");
    R[i][i] = std::sqrt(s);
    for (std::size_t j = i + 1; j < r; ++j) {
      double t = af[i][j];
      for (std::size_t k = 0; k < i; ++k) t -= R[k][i] * R[k][j];
      R[i][j] = t / R[i][i];
    }
  }
  // solve A_ff y = g via R^T R
  auto solve = [&](const std::vector<double>& g) {
    std::vector<double> y(r), x(r);
    for (std::size_t i = 0; i < r; ++i) {
      double s = g[i];
      for (std::size_t k = 0; k < i; ++k) s -= R[k][i] * y[k];
      y[i] = s / R[i][i];
    }
    for (std::size_t i = r; i-- > 0;) {
      double s = y[i];
      for (std::size_t k = i + 1; k < r; ++k) s -= R[i][k] * x[k];
      x[i] = s / R[i][i];
    }
    return x;
  };

  IntVec l(n, 0);
  std::vector<std::size_t> pos(fx.size(), 0);
  double dlimit = static_cast<double>(limit);
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < fx.size(); ++i) {
      if (choice[fx[i]].values.empty()) ok = false;
      else l[fx[i]] = choice[fx[i]].values[pos[i]];
    }
    if (!ok) return;
    if (r == 0) {
      __int128 q = qf.numerator(l);
      if (q <= limit) emit(l, q);
    } else {
      std::vector<double> g(r, 0.0);
      double c = 0;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j : fx) g[i] += static_cast<double>(qf.a[fr[i]][j]) * l[j];
      for (std::size_t i : fx)
        for (std::size_t j : fx) c += static_cast<double>(qf.a[i][j]) * l[i] * l[j];
      std::vector<double> c0 = solve(g);
      for (double& v : c0) v = -v;
      double gc = 0;
      for (std::size_t i = 0; i < r; ++i) gc += g[i] * c0[i];
      double rem0 = dlimit - (c + gc);  // q(f) = (f-c0)^T A (f-c0) + c - g^T A^{-1} g
      double slack = 1e-9 * (1.0 + std::fabs(dlimit) + std::fabs(c));
      if (rem0 >= -slack) {
        std::vector<double> rem(r + 1);
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
          // k counts down: coordinate i = k-1
          if (k == 0) {
            __int128 q = qf.numerator(l);
            if (q <= limit) emit(l, q);
            return;
          }
          std::size_t i = k - 1;
          double s = 0;
          for (std::size_t j = i + 1; j < r; ++j) s += R[i][j] / R[i][i] * (l[fr[j]] - c0[j]);
          double rr = std::max(rem[k], 0.0);
          double half = std::sqrt(rr) / R[i][i] * (1 + 1e-12) + 1e-7;
          double center = c0[i] - s;
          long lo = static_cast<long>(std::ceil(center - half));
          long hi = static_cast<long>(std::floor(center + half));
          int par = choice[fr[i]].parity & 1;
          if (((lo % 2) + 2) % 2 != par) ++lo;
          for (long f = lo; f <= hi; f += 2) {
            l[fr[i]] = f;
            double y = R[i][i] * (f - center);
            rem[k - 1] = rem[k] - y * y;
            if (rem[k - 1] < -slack) continue;
            rec(k - 1);
          }
        };
        rem[r] = rem0;
        rec(r);
      }
    }
    std::size_t i = 0;
    while (i < fx.size()) {
      if (++pos[i] < choice[fx[i]].values.size()) break;
      pos[i] = 0;
      ++i;
    }
    if (i == fx.size()) break;
  }
}

SchurResult schur_complement(const RatMatrix& x, const std::vector<std::size_t>& first) {
  const std::size_t n = x.rows();
  std::vector<bool> in_first(n, false);
  for (std::size_t i : first) in_first[i] = true;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (!in_first[i]) rest.push_back(i);
  RatMatrix a = submatrix(x, first, first), b = submatrix(x, first, rest), c = submatrix(x, rest, rest);
  if (determinant(a) == 0) throw Error("schur_complement: singular A block");
  RatMatrix ainv = inverse(a);
  RatMatrix btab = transpose(b) * ainv * b;
  RatMatrix sc = c;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) sc(i, j) -= btab(i, j);
  SchurResult res;
  res.S = inverse(sc);
  res.T = ainv * b;
  for (std::size_t i = 0; i < res.T.rows(); ++i)
    for (std::size_t j = 0; j < res.T.cols(); ++j) res.T(i, j) = -res.T(i, j);

  // permuted X and the two identities
  std::vector<std::size_t> order = first;
  order.insert(order.end(), rest.begin(), rest.end());
  RatMatrix xp = submatrix(x, order, order);
  const std::size_t k = first.size(), m = rest.size();
  RatMatrix ti(n, m);  // (T; I)
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < m; ++j) ti(i, j) = res.T(i, j);
  for (std::size_t j = 0; j < m; ++j) ti(k + j, j) = 1;
  RatMatrix rhs = ti * res.S * transpose(ti);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) rhs(i, j) += ainv(i, j);
  Rational detx = determinant(xp);
  res.inverse_identity = detx != 0 && inverse(xp) == rhs;
  res.determinant_identity = detx != 0 && determinant(res.S) == determinant(a) / detx;
  return res;
}

}  // namespace gppv
