#include "gppv/matrix.hpp"

#include <algorithm>

namespace gppv {

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Rational(a(i, j));
  return r;
}

IntMatrix to_integer(const RatMatrix& a) {
  IntMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!is_integer(a(i, j))) throw Error("matrix has non-integer entries");
      r(i, j) = a(i, j).get_num();
    }
  return r;
}

bool is_integral(const RatMatrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!is_integer(a(i, j))) return false;
  return true;
}

bool is_symmetric(const RatMatrix& a) {
  if (a.rows() != a.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (a(i, j) != a(j, i)) return false;
  return true;
}

RatMatrix submatrix(const RatMatrix& a, const std::vector<std::size_t>& rows,
                    const std::vector<std::size_t>& cols) {
  RatMatrix r(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = a(rows[i], cols[j]);
  return r;
}

std::vector<Rational> mat_vec(const RatMatrix& a, const std::vector<Rational>& x) {
  if (a.cols() != x.size()) throw Error("mat_vec: shape mismatch");
  std::vector<Rational> r(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * x[j];
  return r;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw Error("dot: size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational determinant(const RatMatrix& a0) {
  if (a0.rows() != a0.cols()) throw Error("determinant of a non-square matrix");
  RatMatrix a = a0;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      Rational f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

Integer determinant(const IntMatrix& a) { return determinant(to_rational(a)).get_num(); }

RatMatrix inverse(const RatMatrix& a0) {
  if (a0.rows() != a0.cols()) throw Error("inverse of a non-square matrix");
  const std::size_t n = a0.rows();
  RatMatrix a = a0, inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw Error("singular matrix");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    Rational s = 1 / a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= s;
      inv(c, j) *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      Rational f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

std::vector<Rational> leading_minors(const RatMatrix& a) {
  std::vector<Rational> out;
  for (std::size_t j = 1; j <= a.rows(); ++j) {
    std::vector<std::size_t> idx(j);
    for (std::size_t i = 0; i < j; ++i) idx[i] = i;
    out.push_back(determinant(submatrix(a, idx, idx)));
  }
  return out;
}

Inertia inertia(const RatMatrix& s) {
  if (!is_symmetric(s)) throw Error("inertia of a non-symmetric matrix");
  RatMatrix a = s;
  std::size_t n = a.rows();
  Inertia in;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && a(i, i) != 0) {
        p = i;
        break;
      }
    if (p == n) {
      // no diagonal pivot: create one from an off-diagonal entry
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && i != j && a(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) break;
      // row/col pi += row/col pj
      for (std::size_t k = 0; k < n; ++k) a(pi, k) += a(pj, k);
      for (std::size_t k = 0; k < n; ++k) a(k, pi) += a(k, pj);
      p = pi;
    }
    done[p] = true;
    Rational d = a(p, p);
    if (d > 0) ++in.positive; else ++in.negative;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a(i, p) == 0) continue;
      Rational f = a(i, p) / d;
      for (std::size_t j = 0; j < n; ++j) a(i, j) -= f * a(p, j);
    }
    for (std::size_t j = 0; j < n; ++j)
      if (!done[j]) a(p, j) = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i]) a(i, p) = 0;
  }
  in.zero = static_cast<int>(n) - in.positive - in.negative;
  return in;
}

namespace {

// Integer division rounding towards negative infinity.
Integer fdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

struct SnfState {
  IntMatrix a, uinv_acc, vinv_acc;  // a = L A0 R; U = L^{-1}, V = R^{-1}
  std::size_t n, m;
  void row_swap(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < m; ++k) std::swap(a(i, k), a(j, k));
    for (std::size_t k = 0; k < n; ++k) std::swap(uinv_acc(k, i), uinv_acc(k, j));
  }
  void col_swap(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
    for (std::size_t k = 0; k < m; ++k) std::swap(vinv_acc(i, k), vinv_acc(j, k));
  }
  // row i += c * row j
  void row_add(std::size_t i, std::size_t j, const Integer& c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < m; ++k) a(i, k) += c * a(j, k);
    for (std::size_t k = 0; k < n; ++k) uinv_acc(k, j) -= c * uinv_acc(k, i);
  }
  // col i += c * col j
  void col_add(std::size_t i, std::size_t j, const Integer& c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < n; ++k) a(k, i) += c * a(k, j);
    for (std::size_t k = 0; k < m; ++k) vinv_acc(j, k) -= c * vinv_acc(i, k);
  }
  void row_neg(std::size_t i) {
    for (std::size_t k = 0; k < m; ++k) a(i, k) = -a(i, k);
    for (std::size_t k = 0; k < n; ++k) uinv_acc(k, i) = -uinv_acc(k, i);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a0) {
  SnfState s{a0, IntMatrix::identity(a0.rows()), IntMatrix::identity(a0.cols()), a0.rows(), a0.cols()};
  const std::size_t r = std::min(s.n, s.m);
  for (std::size_t t = 0; t < r; ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block
      std::size_t pi = s.n, pj = s.m;
      for (std::size_t i = t; i < s.n; ++i)
        for (std::size_t j = t; j < s.m; ++j)
          if (s.a(i, j) != 0 && (pi == s.n || abs(s.a(i, j)) < abs(s.a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == s.n) break;  // trailing block is zero
      if (pi != t) s.row_swap(pi, t);
      if (pj != t) s.col_swap(pj, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < s.n; ++i) {
        s.row_add(i, t, -fdiv(s.a(i, t), s.a(t, t)));
        if (s.a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < s.m; ++j) {
        s.col_add(j, t, -fdiv(s.a(t, j), s.a(t, t)));
        if (s.a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility of the trailing block by the pivot
      std::size_t bad = s.n;
      for (std::size_t i = t + 1; i < s.n && bad == s.n; ++i)
        for (std::size_t j = t + 1; j < s.m; ++j)
          if (s.a(i, j) % s.a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == s.n) break;
      s.row_add(t, bad, 1);
    }
    if (s.a(t, t) < 0) s.row_neg(t);
  }
  return {s.uinv_acc, s.a, s.vinv_acc};
}

IntMatrix hermite_normal_form(const IntMatrix& b) {
  const std::size_t n = b.rows(), m = b.cols();
  IntMatrix a = b;
  auto col_swap = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
  };
  auto col_add = [&](std::size_t i, std::size_t j, const Integer& c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < n; ++k) a(k, i) += c * a(k, j);
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= m) throw Error("hermite_normal_form: lattice is not full rank");
    while (true) {
      std::size_t p = m;
      for (std::size_t j = i; j < m; ++j)
        if (a(i, j) != 0 && (p == m || abs(a(i, j)) < abs(a(i, p)))) p = j;
      if (p == m) throw Error("hermite_normal_form: lattice is not full rank");
      if (p != i) col_swap(p, i);
      bool clean = true;
      for (std::size_t j = i + 1; j < m; ++j) {
        col_add(j, i, -fdiv(a(i, j), a(i, i)));
        if (a(i, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(i, i) < 0)
      for (std::size_t k = 0; k < n; ++k) a(k, i) = -a(k, i);
    for (std::size_t j = 0; j < i; ++j) col_add(j, i, -fdiv(a(i, j), a(i, i)));
  }
  IntMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = a(i, j);
  return h;
}

}  // namespace gppv
