#include <map>

#include "gppv/lattice.hpp"
#include "gppv/wrt.hpp"

namespace gppv {

namespace {

Rational frac(const Rational& x) { return frac_part(x); }

// sum_j count_j e(x_j) with the x_j already reduced mod 1
BigComplex sum_phases(const std::map<Rational, long>& counts, mpfr_prec_t prec) {
  BigComplex s(prec);
  for (const auto& [x, c] : counts) s += BigComplex::e(x, prec) * BigFloat(c, prec);
  return s;
}

Rational bilinear(const RatMatrix& a, const std::vector<Rational>& x, const std::vector<Rational>& y) {
  return dot(x, mat_vec(a, y));
}

}  // namespace

ReciprocityResult reciprocity_both_sides(const RatMatrix& form, long k, const std::vector<Rational>& u,
                                         const RatMatrix& h, mpfr_prec_t prec) {
  ReciprocityResult out;
  const std::size_t n = form.rows();
  auto fail = [&](std::string why) { out.failures.push_back(std::move(why)); };
  if (form.cols() != n || h.rows() != n || h.cols() != n || u.size() != n) throw Error("reciprocity: shape mismatch");
  if (!is_integral(form) || !is_symmetric(form)) fail("form must be an integral symmetric matrix");
  const Rational det_b = determinant(form);
  const Rational det_h = determinant(h);
  if (det_b == 0) fail("form is degenerate");
  if (det_h == 0) fail("h is singular");
  if (k < 1) fail("k must be positive");
  if (!out.failures.empty()) return out;

  const RatMatrix binv = inverse(form);
  const RatMatrix bh = form * h;
  const Rational index = abs(det_b);
  if (!is_integer(Rational(k) / index)) fail("k is not a multiple of |L'/L| = " + to_string(index));
  for (const auto& c : u)
    if (!is_integer(c * k)) fail("u is not in (1/k)L");
  if (!is_symmetric(bh)) fail("h is not self-adjoint");
  const RatMatrix x = form * h * binv;  // h on L' in dual coordinates
  if (!is_integral(x)) fail("h(L') is not contained in L'");
  // (k/2) <y, h y> for y = B^{-1} m is (k/2) m^T (h B^{-1}) m
  const RatMatrix a = h * binv;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Rational c = (i == j) ? Rational(Rational(k) * a(i, i) / 2) : Rational(Rational(k) * a(i, j));
      if (!is_integer(c)) {
        fail("(k/2)<y,h(y)> is not integral on L'");
        i = n;
        break;
      }
    }
  if (!out.failures.empty()) return out;
  out.hypotheses_ok = true;

  const mpfr_prec_t wp = prec + 32;
  out.signature = inertia(bh).signature();

  // lhs: x over (Z/k)^n
  std::map<Rational, long> lhs;
  {
    std::vector<long> xi(n, 0);
    std::vector<Rational> xv(n);
    const std::vector<Rational> bu = mat_vec(form, u);
    for (;;) {
      for (std::size_t i = 0; i < n; ++i) xv[i] = xi[i];
      Rational ph = bilinear(bh, xv, xv) / (2 * k) + dot(xv, bu);
      ++lhs[frac(ph)];
      ++out.lhs_terms;
      std::size_t i = 0;
      while (i < n && ++xi[i] == k) xi[i++] = 0;
      if (i == n) break;
    }
  }
  // rhs: y = B^{-1} m over L'/h(L), i.e. m over Z^n / (B H) Z^n
  std::map<Rational, long> rhs;
  {
    const RatMatrix hinv = inverse(h);
    const RatMatrix bhinv = form * hinv;
    CosetSystem cs(to_integer(bh), std::nullopt);
    for (const auto& m : cs.reps()) {
      std::vector<Rational> mv(m.begin(), m.end());
      std::vector<Rational> y = mat_vec(binv, mv);
      for (std::size_t i = 0; i < n; ++i) y[i] += u[i];
      Rational ph = -Rational(k) / 2 * bilinear(bhinv, y, y);
      ++rhs[frac(ph)];
      ++out.rhs_terms;
    }
  }
  out.lhs = sum_phases(lhs, wp);
  BigComplex r = sum_phases(rhs, wp) * BigComplex::e(Rational(out.signature, 8), wp);
  // k^{n/2} / sqrt(|L'/L| |det h|)
  BigFloat scale = pow_si(sqrt(BigFloat(k, wp)), static_cast<long>(n)) / sqrt(BigFloat(Rational(index * abs(det_h)), wp));
  out.rhs = r * scale;
  return out;
}

}  // namespace gppv
