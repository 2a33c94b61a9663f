#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "gppv/asymptotics.hpp"
#include "gppv/fixtures.hpp"
#include "gppv/kernels.hpp"
#include "gppv/pruning.hpp"
#include "gppv/radial.hpp"
#include "gppv/zhat.hpp"

using namespace gppv;

namespace {

constexpr mpfr_prec_t kPrec = 128;

Rational coeff1(const MultiLaurent& s, int e) {
  return s.coefficient(unit_monomial(0, e)).rational_value();
}

std::vector<Rational> geometric(Rational x, const Rational& r, int n) {
  std::vector<Rational> out;
  for (int j = 0; j < n; ++j, x *= r) out.push_back(x);
  return out;
}

double rel(const BigComplex& a, const BigComplex& b) {
  return (a - b).abs().to_double() / b.abs().to_double();
}

}  // namespace

TEST_CASE("Euler-Maclaurin coefficients") {
  CHECK(em_coefficients(0, 0, 0, 0) == Rational(-1, 2));
  CHECK(em_coefficients(1, -1, 3, 0) == -3);
  CHECK(em_coefficients(2, -4, 5, 1) == 0);
  CHECK(em_coefficients(3, -5, Rational(1, 2), 0) == 0);
  // middle case m!/(m+n+1)! (-a)^(m+n+1)
  CHECK(em_coefficients(3, -2, 2, 0) == Rational(6, 2) * 4);
  CHECK_THROWS(em_coefficients(-1, 0, 0, 0));
  CHECK(em_b(1, 0, 5) == 0);
}

TEST_CASE("phi_F generator") {
  const int cap = 5;
  auto g = phi_F_generator({{0, 1}}, {{Rational(1), {0}}}, {}, cap);
  CHECK(coeff1(g, -1) == -1);
  CHECK(coeff1(g, 0) == Rational(1, 2));
  CHECK(coeff1(g, 1) == Rational(-1, 12));
  CHECK(coeff1(g, 2) == 0);
  CHECK(coeff1(g, 3) == Rational(1, 720));

  // P = y is the derivative of the base case
  auto base = phi_F_generator({{1, 2}}, {{Rational(1), {0}}}, {}, cap + 1);
  auto py = phi_F_generator({{1, 2}}, {{Rational(1), {1}}}, {}, cap);
  CHECK(py.equal_within(base.derivative(0), cap));

  // k = 0 is the single point a
  auto e3 = phi_F_generator({{3, 0}}, {{Rational(1), {0}}}, {}, cap);
  Rational x = 1;
  for (int j = 0; j <= cap; ++j) {
    CHECK(coeff1(e3, j) == x);
    x *= Rational(3, j + 1);
  }
  // the shift u multiplies by e^{ut}
  auto sh = phi_F_generator({{3, 0}}, {{Rational(1), {0}}}, {Rational(-3)}, cap);
  CHECK(coeff1(sh, 0) == 1);
  for (int j = 1; j <= cap; ++j) CHECK(coeff1(sh, j) == 0);
}

TEST_CASE("Hadamard product examples") {
  auto one = MultiLaurent::constant(2, CyclotomicNumber(1), 3);
  auto f0 = [](const Monomial& m) { return BigComplex(total_degree(m) == 0 ? 5L : 0L, kPrec); };
  auto h = hadamard(one, f0, kPrec);
  CHECK(h.coefficient(0, kPrec).re.to_double() == doctest::Approx(5));

  MultiLaurent t1t2(2, {0, 0}, 3);
  Monomial m{};
  m[0] = 1;
  m[1] = 1;
  t1t2.add(m, CyclotomicNumber(1));
  // f = e^{x1 + x2}: every derivative at 0 is 1
  auto h2 = hadamard(t1t2, [](const Monomial&) { return BigComplex(1L, kPrec); }, kPrec);
  CHECK(h2.coefficient(2, kPrec).re.to_double() == doctest::Approx(1));
  CHECK(h2.coefficient(1, kPrec).abs().to_double() == 0);
}

TEST_CASE("Gaussian derivative oracle") {
  RatMatrix w1(1, 1);
  w1(0, 0) = -1;
  GaussianOracle f(w1, kPrec);
  CHECK(f.exact({0}) == 1);
  CHECK(f.exact({2}) == Rational(-1, 2));
  CHECK(f.exact({1}) == 0);
  CHECK(f.exact({4}) == f.exact_recursive({4}));
  const BigFloat sqrt_pi = sqrt(BigFloat::pi(kPrec));
  CHECK(abs(f.value({-1}) + sqrt_pi).to_double() < 1e-30);
  // -int_0^inf x e^{-x^2/4}... antiderivative of f' is f: f^(-1) of f^(1) at 0
  CHECK(abs(f.value({0}) - BigFloat(1L, kPrec)).to_double() < 1e-35);
  // twice integrated: int_0^inf y e^{-y^2/4} dy = 2
  CHECK(abs(f.value({-2}) - BigFloat(2L, kPrec)).to_double() < 1e-28);

  // exact series coefficients against the derivative recursion
  std::mt19937 rng(7);
  for (const char* name : {"a2", "a3", "y2337"}) {
    auto g = fixture(name);
    GaussianOracle o(linking_matrix(g), kPrec);
    std::uniform_int_distribution<int> e(0, 3);
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<int> m(g.size());
      for (int& x : m) x = e(rng);
      CHECK(o.exact(m) == o.exact_recursive(m));
    }
  }
}

TEST_CASE("two-dimensional negative moments") {
  // A = W^-1 for W = diag(-1, -4) is separable: f = e^{-x^2/4} e^{-y^2/16}
  RatMatrix w(2, 2);
  w(0, 0) = -1;
  w(1, 1) = -4;
  GaussianOracle f(w, kPrec);
  const BigFloat sqrt_pi = sqrt(BigFloat::pi(kPrec));
  // (-sqrt pi) (-2 sqrt pi)
  BigFloat want = sqrt_pi * sqrt_pi * BigFloat(2L, kPrec);
  CHECK(abs(f.value({-1, -1}) - want).to_double() < 1e-20 * want.to_double());
  // (-sqrt pi) * f_y''(0) = (-sqrt pi)(-1/8)
  BigFloat want2 = sqrt_pi / BigFloat(8L, kPrec);
  CHECK(abs(f.value({-1, 2}) - want2).to_double() < 1e-20);
}

TEST_CASE("tanh-sinh quadrature") {
  auto q = tanh_sinh([](const std::vector<BigFloat>& x) { return exp(-(x[0] * x[0])); }, 1, BigFloat(12L, kPrec),
                     kPrec);
  CHECK(q.converged);
  CHECK(abs(q.value - sqrt(BigFloat::pi(kPrec)) / BigFloat(2L, kPrec)).to_double() < 1e-30);
  auto q2 = tanh_sinh([](const std::vector<BigFloat>& x) { return x[0] * x[1]; }, 2, BigFloat(1L, kPrec), kPrec);
  CHECK(abs(q2.value - BigFloat(0.25, kPrec)).to_double() < 1e-30);
}

TEST_CASE("one-dimensional Euler-Maclaurin harness") {
  const auto tg = geometric(Rational(1, 4), Rational(3, 4), 6);
  // F = 1 on Z>=0, f = e^{-x^2}: sqrt(pi)/(2t) + 1/2, the rest exponentially small
  auto r = check_asymp_lim_1d({0, 1}, {{Rational(1), {0}}}, 0, 1, 3, tg, kPrec);
  CHECK(r.expansion.low == -1);
  CHECK(r.expansion.coefficient(-1, kPrec).re.to_double() == doctest::Approx(std::sqrt(M_PI) / 2).epsilon(1e-14));
  CHECK(r.expansion.coefficient(0, kPrec).re.to_double() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.passed());

  // shifted progression: polynomial corrections, slope at least M = 3
  auto s = check_asymp_lim_1d({0, 1}, {{Rational(1), {0}}}, Rational(1, 3), 1, 3, tg, kPrec);
  CHECK(!s.exponentially_small);
  CHECK(s.slope >= 3);

  // deg-1 vertex data delta(l in 1 + 2Z>=0) (-l)
  auto d = check_asymp_lim_1d({1, 2}, {{Rational(-1), {1}}}, 0, 1, 3, tg, kPrec);
  CHECK(d.passed());
  CHECK(d.slope >= 3);
}

TEST_CASE("vertex data against F_v series") {
  const auto tg = geometric(Rational(1, 4), Rational(3, 4), 6);
  for (int deg : {1, 4}) {
    for (long mu : {0L, 1L}) {
      auto r = check_asymp_f_v_1d(deg, 3, mu, 1, 3, tg, kPrec);
      CHECK_MESSAGE(r.passed(), "deg " << deg << " mu " << mu << " slope " << r.slope);
    }
  }
  CHECK(check_asymp_f_v_1d(3, 3, 1, 1, 3, tg, kPrec).passed());
  // deg 3 at mu = 0: the two-sided sum vanishes identically while the series
  // keeps a sqrt(pi)/(4t) term from the one-sided antiderivative
  auto p = check_asymp_f_v_1d(3, 3, 0, 1, 3, tg, kPrec);
  CHECK(!p.passed());
  for (std::size_t i = 0; i < p.t.size(); ++i)
    CHECK(p.error[i] * p.t[i] == doctest::Approx(std::sqrt(M_PI) / 4).epsilon(1e-3));
}

TEST_CASE("radial sum of the single vertex") {
  auto g = fixture("s3");
  auto s = radial_sum(g, 3, Rational(1, 4), Rational(50), kPrec);
  // Zhat = 2 q^{1/2} - 2 q^{-1/2}, q^x = e(x/3) e^{-xt}
  using C = std::complex<double>;
  const double t = 0.25;
  C z = 2.0 * std::polar(1.0, M_PI / 3) * std::exp(-t / 2) - 2.0 * std::polar(1.0, -M_PI / 3) * std::exp(t / 2);
  CHECK(std::abs(C(s.value.re.to_double(), s.value.im.to_double()) - z) < 1e-10);
  CHECK(s.tail == 0);
  // large t: the q^{-1/2} term dominates
  auto big = radial_sum(g, 3, Rational(5), Rational(50), kPrec);
  C lead = -2.0 * std::polar(1.0, -M_PI / 3) * std::exp(2.5);
  CHECK(std::abs(C(big.value.re.to_double(), big.value.im.to_double()) - lead) <= 2 * std::exp(-2.5) * 1.0001);
}

TEST_CASE("radial phases are roots of unity of the right order") {
  for (const char* name : {"a2", "a3", "y2337"}) {
    auto g = fixture(name);
    RadialSum rs(g, Rational(10));
    const Rational det = abs(determinant(linking_matrix(g)));
    for (long k : {2L, 3L, 5L})
      for (std::size_t a = 0; a < rs.a_classes(); ++a)
        for (std::size_t b = 0; b < rs.b_classes(); ++b) {
          Rational x = rs.phase_exponent(k, a, b) * Rational(4 * k) * Rational(det);
          CHECK(x.get_den() == 1);
          CHECK(rs.phase_exponent(k, a, b) >= 0);
          CHECK(rs.phase_exponent(k, a, b) < 1);
        }
  }
}

TEST_CASE("q-series kernel: serial and parallel agree") {
  auto tab = zhat_table(fixture("e8"), Rational(4000));
  REQUIRE(tab.terms() > 50);
  for (long k : {3L, 7L}) {
    BigFloat t(Rational(1, 300), kPrec + 32);
    auto a = kernels::qseries_eval_serial(tab.n[0], tab.c[0], tab.denom, k, t, kPrec);
    auto b = kernels::qseries_eval_parallel(tab.n[0], tab.c[0], tab.denom, k, t, kPrec);
    CHECK(rel(b, a) < 1e-33);
  }
  // the table holds the same series as zhat_all
  auto z = zhat_all(fixture("y2337"), Rational(300));
  auto tz = zhat_table(fixture("y2337"), Rational(300));
  REQUIRE(tz.n[0].size() == z[0].size());
  std::size_t i = 0;
  for (const auto& [n, c] : z[0].terms()) {
    CHECK(n * (tz.denom / z[0].denom()) == tz.n[0][i]);
    Rational q(tz.c[0][i], tz.scale);
    q.canonicalize();
    CHECK(c == q);
    ++i;
  }
}

TEST_CASE("extrapolation examples") {
  std::vector<BigFloat> s;
  std::vector<BigComplex> c, quad;
  for (int j = 0; j < 6; ++j) {
    BigFloat x = ldexp(BigFloat(1L, kPrec), -j - 1);
    s.push_back(x);
    c.push_back(BigComplex(3L, kPrec));
    quad.push_back(BigComplex(BigFloat(1L, kPrec) + x + x * x, BigFloat(0L, kPrec)));
  }
  auto e = extrapolate(s, c, 2, kPrec);
  CHECK((e.limit - BigComplex(3L, kPrec)).abs().to_double() < 1e-30);
  auto q = extrapolate(s, quad, 2, kPrec);
  CHECK((q.limit - BigComplex(1L, kPrec)).abs().to_double() < 1e-25);
  CHECK(!q.ill_conditioned);
  CHECK_THROWS(extrapolate(s, quad, 5, kPrec));

  // even-power fit of samples 1 + 3t
  std::vector<RadialSample> smp;
  for (int j = 0; j < 5; ++j) {
    RadialSample r;
    r.t = Rational(1, 10 * (j + 1));
    r.value = BigComplex(BigFloat(1L, kPrec) + BigFloat(r.t * 3, kPrec), BigFloat(0L, kPrec));
    smp.push_back(r);
  }
  auto ev = extrapolate(smp, 2, kPrec, true);
  CHECK((ev.limit - BigComplex(1L, kPrec)).abs().to_double() < 1e-30);
  CHECK(ev.coeffs[1].re.to_double() == doctest::Approx(3));
}

TEST_CASE("radial grid and truncation") {
  CHECK(radial_scale(fixture("s3")) == doctest::Approx(1));
  // -W^-1 of the A_2 chain has eigenvalues 1 and 1/3
  CHECK(radial_scale(fixture("a2")) == doctest::Approx(1));
  RadialConfig cfg;
  auto g = fixture("y2337");
  auto s3 = radial_grid(cfg, g, 3), s7 = radial_grid(cfg, g, 7);
  CHECK(static_cast<int>(s3.size()) == cfg.samples);
  CHECK(s7.back() < s3.back());
  for (std::size_t j = 1; j < s3.size(); ++j) CHECK(s3[j] == s3[j - 1] * cfg.ratio);
  CHECK(radial_truncation(g, cfg, {3, 7}) == radial_truncation(g, cfg, {7}));
  cfg.samples = cfg.degree + 1;
  CHECK_THROWS(radial_grid(cfg, g, 3));
}

TEST_CASE("main theorem at small scale") {
  VerifyConfig cfg;
  auto s3 = verify_main_theorem(fixture("s3"), 3, cfg);
  CHECK(s3.passed);
  CHECK(s3.rel_error < 1e-6);
  CHECK(s3.exact_rel_error < 1e-30);
  CHECK(s3.phi_b0_matches);
  auto y = verify_main_theorem(fixture("y2337"), 3, cfg);
  CHECK(y.passed);
  CHECK(y.tol == doctest::Approx(1e-4));
  auto e8 = verify_main_theorem(fixture("e8"), 5, cfg);
  CHECK(e8.passed);
  CHECK(e8.tol == doctest::Approx(1e-3));
}

TEST_CASE("Hadamard series of phi against radial samples") {
  auto g = fixture("y2337");
  RadialConfig cfg;
  cfg.u0 = 1;
  cfg.degree = 0;
  cfg.samples = 6;
  cfg.ratio = Rational(2, 3);
  auto h = check_radial_hadamard(g, 3, 4, radial_grid(cfg, g, 3), cfg);
  CHECK(h.no_negative_powers);
  for (int d = 1; d <= 3; d += 2) CHECK(h.series.coefficient(d, kPrec).abs().to_double() == 0);
  CHECK(h.passed());
  CHECK(h.slope > 2.5);
}
