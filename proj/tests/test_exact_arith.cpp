#include <cmath>
#include <random>

#include "doctest.h"
#include "gppv/bigfloat.hpp"
#include "gppv/cyclotomic.hpp"
#include "gppv/multilaurent.hpp"
#include "gppv/puiseux.hpp"
#include "gppv/kernels.hpp"

using namespace gppv;

namespace {

// B_i(x) from t e^{xt}/(e^t - 1) = (sum t^j/(j+1)!)^{-1} * sum (xt)^j/j!
std::vector<Rational> bernoulli_by_generating_function(unsigned n, const Rational& x) {
  std::vector<Rational> d(n + 1), inv(n + 1, 0), ex(n + 1), out(n + 1, 0);
  for (unsigned j = 0; j <= n; ++j) d[j] = Rational(1) / Rational(factorial(j + 1));
  inv[0] = 1;
  for (unsigned j = 1; j <= n; ++j) {
    Rational s = 0;
    for (unsigned i = 1; i <= j; ++i) s += d[i] * inv[j - i];
    inv[j] = -s;
  }
  for (unsigned j = 0; j <= n; ++j) ex[j] = pow(x, j) / Rational(factorial(j));
  for (unsigned i = 0; i <= n; ++i) {
    Rational s = 0;
    for (unsigned j = 0; j <= i; ++j) s += inv[j] * ex[i - j];
    out[i] = s * Rational(factorial(i));
  }
  return out;
}

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-40, 40), den(1, 17);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

}  // namespace

TEST_CASE("bernoulli polynomial examples") {
  CHECK(bernoulli_polynomial(0, Rational(5, 7)) == 1);
  CHECK(bernoulli_polynomial(1, 0) == Rational(-1, 2));
  CHECK(bernoulli_polynomial(2, Rational(1, 2)) == Rational(-1, 12));
}

TEST_CASE("bernoulli polynomial against the generating function") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    Rational x = random_rational(rng);
    auto ref = bernoulli_by_generating_function(14, x);
    for (unsigned i = 0; i <= 14; ++i) CHECK(bernoulli_polynomial(i, x) == ref[i]);
  }
}

TEST_CASE("bernoulli difference identity") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Rational x = random_rational(rng);
    for (unsigned i = 1; i <= 12; ++i)
      CHECK(bernoulli_polynomial(i, x + 1) - bernoulli_polynomial(i, x) == Rational(i) * pow(x, i - 1));
  }
}

TEST_CASE("roots of unity embed to 2^-120") {
  const mpfr_prec_t p = 128;
  BigFloat tol = ldexp(BigFloat(1L, p), -120);
  for (unsigned n = 1; n <= 40; ++n)
    for (unsigned j = 0; j < n; ++j) {
      CyclotomicNumber z = CyclotomicNumber::e(Rational(j, n));
      BigFloat th = BigFloat::pi(p + 20) * BigFloat(Rational(2 * j, n), p + 20);
      BigComplex ref(cos(th), sin(th));
      CHECK((z.embed(p) - ref).abs() <= tol);
      CHECK((z.canonical().embed(p) - ref).abs() <= tol);
    }
}

TEST_CASE("cyclotomic canonical form and zero tests") {
  for (unsigned n = 1; n <= 90; ++n) {
    CyclotomicNumber s;
    for (unsigned j = 0; j < n; ++j) s += CyclotomicNumber::root(n, j);
    if (n == 1) CHECK(s == CyclotomicNumber(1));
    else CHECK(s.is_zero());
  }
  CHECK(CyclotomicNumber::root(8, 4) == CyclotomicNumber(-1));
  CHECK(CyclotomicNumber::root(4, 1) * CyclotomicNumber::root(6, 1) == CyclotomicNumber::root(12, 5));
  CHECK(CyclotomicNumber::root(12, 4) == CyclotomicNumber::root(3, 1));
  // zeta_3^2 = -1 - zeta_3 in the power basis
  std::uint32_t m = 0;
  auto pb = CyclotomicNumber::root(3, 2).power_basis(&m);
  CHECK(m == 3);
  REQUIRE(pb.size() == 2);
  CHECK(pb[0] == -1);
  CHECK(pb[1] == -1);
  // shrinking to the smallest field
  auto q = (CyclotomicNumber::root(24, 8) + CyclotomicNumber::root(24, 16)).shrunk();
  CHECK(q.order() == 1);
  CHECK(q.rational_value() == -1);
  // sqrt(2) = zeta_8 + zeta_8^{-1}
  CyclotomicNumber r2 = CyclotomicNumber::root(8, 1) + CyclotomicNumber::root(8, 7);
  CHECK(r2 * r2 == CyclotomicNumber(2));
  CHECK(!r2.is_rational());
}

TEST_CASE("cyclotomic inverses") {
  for (unsigned n = 2; n <= 30; ++n)
    for (unsigned j = 1; j < n; ++j) {
      CyclotomicNumber w = CyclotomicNumber::root(n, j);
      CyclotomicNumber inv = CyclotomicNumber::inverse_root_minus_one(n, j);
      CHECK((w - CyclotomicNumber(1)) * inv == CyclotomicNumber(1));
    }
  std::mt19937 rng(3);
  for (unsigned n : {5u, 8u, 12u, 15u, 20u}) {
    CyclotomicNumber x;
    for (unsigned j = 0; j < n; ++j) x += CyclotomicNumber::root(n, j, random_rational(rng));
    if (x.is_zero()) continue;
    CHECK(x * x.inverse() == CyclotomicNumber(1));
  }
}

TEST_CASE("cyclotomic embedding is a ring homomorphism") {
  std::mt19937 rng(5);
  const mpfr_prec_t p = 128;
  BigFloat tol = ldexp(BigFloat(1L, p), -100);
  for (unsigned na : {6u, 8u, 20u})
    for (unsigned nb : {4u, 9u, 15u}) {
      CyclotomicNumber a, b;
      for (int i = 0; i < 5; ++i) {
        a += CyclotomicNumber::root(na, rng() % na, random_rational(rng));
        b += CyclotomicNumber::root(nb, rng() % nb, random_rational(rng));
      }
      CHECK(((a * b).embed(p) - a.embed(p) * b.embed(p)).abs() <= tol);
      CHECK(((a + b).embed(p) - a.embed(p) - b.embed(p)).abs() <= tol);
      CHECK(((a * b).canonical().embed(p) - (a * b).embed(p)).abs() <= tol);
      std::uint32_t m = 0;
      auto pb = (a * b).power_basis(&m);
      CHECK(CyclotomicNumber::from_power_basis(m, pb) == a * b);
    }
}

TEST_CASE("puiseux evaluation examples and linearity") {
  const mpfr_prec_t p = 128;
  BigFloat tol = ldexp(BigFloat(1L, p), -110);
  PuiseuxSeries one(1, 5);
  one.add_term(0, 1);
  CHECK((puiseux_eval(one, 3, Rational(1, 3), p) - BigComplex(1L, p)).abs() <= tol);

  PuiseuxSeries s(2, 2);
  s.add_term(1, 2);
  s.add_term(-1, -2);
  BigFloat h(Rational(1, 2), p);
  // q^x = e(x/k) e^{-xt}; at k = 1 the phase e(+-1/2) = -1 flips both terms
  BigComplex ref(BigFloat(2L, p) * (exp(h) - exp(-h)), BigFloat(0L, p));
  CHECK((puiseux_eval(s, 1, Rational(1), p) - ref).abs() <= tol);

  PuiseuxSeries u(1, 3);
  u.add_term(1, 1);
  BigFloat t(Rational(1, 5), p);
  BigComplex ref2(-exp(-t), BigFloat(0L, p));
  CHECK((puiseux_eval(u, 2, Rational(1, 5), p) - ref2).abs() <= tol);

  PuiseuxSeries a(3, 10), b(4, 10);
  for (int n = -3; n < 30; ++n) {
    a.add_term(n, Rational(n * n - 3, 7));
    b.add_term(n, Rational(5 - n, 3));
  }
  PuiseuxSeries ab = a + b;
  for (long k : {1L, 3L, 7L}) {
    BigComplex lhs = puiseux_eval(ab, k, Rational(1, 9), p);
    BigComplex rhs = puiseux_eval(a, k, Rational(1, 9), p) + puiseux_eval(b, k, Rational(1, 9), p);
    CHECK((lhs - rhs).abs() <= tol);
  }
}

TEST_CASE("puiseux parallel kernel matches serial reference") {
  const mpfr_prec_t p = 160;
  PuiseuxSeries s(12, 400);
  for (int n = -20; n < 4000; n += 3) s.add_term(n, Rational((n % 17) - 8, 1 + (n % 5 + 5) % 5));
  BigFloat t(Rational(1, 50), p + 32);
  BigComplex a = kernels::puiseux_eval_serial(s, 5, t, p);
  BigComplex b = kernels::puiseux_eval_parallel(s, 5, t, p);
  CHECK((a - b).abs() <= ldexp(BigFloat(1L, p), -140) * (a.abs() + BigFloat(1L, p)));
}

TEST_CASE("multilaurent examples") {
  const int n = 2;
  MultiLaurent one = MultiLaurent::constant(n, 1, 4);
  MultiLaurent b(n, {0, 0}, 4);
  b.add(unit_monomial(0, 1), CyclotomicNumber::root(5, 2));
  b.add(unit_monomial(1, 3), Rational(3, 7));
  CHECK((one * b) == b);

  MultiLaurent inv_t(n, {-1, 0}, 4), t(n, {0, 0}, 4);
  inv_t.add(unit_monomial(0, -1), 1);
  t.add(unit_monomial(0, 1), 1);
  MultiLaurent prod = inv_t * t;
  CHECK(prod.size() == 1);
  CHECK(prod.coefficient(Monomial{}) == CyclotomicNumber(1));
  CHECK(prod.cap() == 3);

  MultiLaurent p(n, {0, 0}, 2), q(n, {0, 0}, 2);
  p.add(Monomial{}, 1);
  p.add(unit_monomial(0), 1);
  q.add(Monomial{}, 1);
  q.add(unit_monomial(0), -1);
  MultiLaurent pq = p * q;
  CHECK(pq.size() == 2);
  CHECK(pq.coefficient(unit_monomial(0, 2)) == CyclotomicNumber(-1));
}

TEST_CASE("multilaurent product is associative and commutative up to the cap") {
  std::mt19937 rng(17);
  auto random_series = [&](int lower0) {
    MultiLaurent s(3, {lower0, 0, 0}, 4);
    for (int i = 0; i < 12; ++i) {
      Monomial m{};
      m[0] = static_cast<std::int8_t>(lower0 + static_cast<int>(rng() % 3));
      m[1] = static_cast<std::int8_t>(rng() % 3);
      m[2] = static_cast<std::int8_t>(rng() % 3);
      s.add(m, CyclotomicNumber::root(12, rng() % 12, random_rational(rng)));
    }
    return s;
  };
  for (int trial = 0; trial < 6; ++trial) {
    MultiLaurent a = random_series(-1), b = random_series(0), c = random_series(0);
    MultiLaurent l = (a * b) * c, r = a * (b * c);
    CHECK(l.cap() == r.cap());
    CHECK(l.equal_within(r, l.cap()));
    CHECK((a * b).equal_within(b * a, (a * b).cap()));
  }
}
