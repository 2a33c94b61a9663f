#include "gppv/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace gppv {

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_si(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(double v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& q, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const Integer& z, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, o.precision());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(v_, o.precision());
  mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::pi(mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from_string(const std::string& s, mpfr_prec_t prec) {
  BigFloat r(prec);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) throw Error("malformed float: " + s);
  return r;
}

namespace {
// Promote target precision before a binary op so results round at max(prec).
void widen(BigFloat& a, const BigFloat& b) {
  if (b.precision() > a.precision()) mpfr_prec_round(a.raw(), b.precision(), MPFR_RNDN);
}
}  // namespace

BigFloat& BigFloat::operator+=(const BigFloat& o) {
  widen(*this, o);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator-=(const BigFloat& o) {
  widen(*this, o);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator*=(const BigFloat& o) {
  widen(*this, o);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator/=(const BigFloat& o) {
  widen(*this, o);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat BigFloat::operator-() const {
  BigFloat r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

std::string BigFloat::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (digits <= 0) digits = static_cast<int>(std::ceil(precision() * 0.30103)) + 2;
  std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
  return std::string(buf.data());
}

long BigFloat::exponent2() const {
  if (mpfr_zero_p(v_)) return mpfr_get_emin();
  return mpfr_get_exp(v_);
}

BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
bool operator>=(const BigFloat& a, const BigFloat& b) {
  return mpfr_greaterequal_p(a.raw(), b.raw()) != 0;
}

#define GPPV_UNARY(name, fn)                 \
  BigFloat name(const BigFloat& x) {         \
    BigFloat r(x.precision());               \
    fn(r.raw(), x.raw(), MPFR_RNDN);         \
    return r;                                \
  }
GPPV_UNARY(exp, mpfr_exp)
GPPV_UNARY(log, mpfr_log)
GPPV_UNARY(sqrt, mpfr_sqrt)
GPPV_UNARY(cos, mpfr_cos)
GPPV_UNARY(sin, mpfr_sin)
GPPV_UNARY(abs, mpfr_abs)
#undef GPPV_UNARY

BigFloat pow_si(const BigFloat& x, long e) {
  BigFloat r(x.precision());
  mpfr_pow_si(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}

BigFloat ldexp(const BigFloat& x, long e) {
  BigFloat r(x);
  mpfr_mul_2si(r.raw(), r.raw(), e, MPFR_RNDN);
  return r;
}

BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

BigComplex BigComplex::e(const Rational& x, mpfr_prec_t prec) {
  Rational f = frac_part(x);
  // exact values at the quarter points avoid spurious 1e-40 residues
  if (f == 0) return BigComplex(BigFloat(1L, prec), BigFloat(0L, prec));
  if (f == Rational(1, 2)) return BigComplex(BigFloat(-1L, prec), BigFloat(0L, prec));
  if (f == Rational(1, 4)) return BigComplex(BigFloat(0L, prec), BigFloat(1L, prec));
  if (f == Rational(3, 4)) return BigComplex(BigFloat(0L, prec), BigFloat(-1L, prec));
  BigFloat theta = BigFloat::pi(prec + 16) * BigFloat(Rational(2) * f, prec + 16);
  BigFloat c(prec), s(prec);
  mpfr_sin_cos(s.raw(), c.raw(), theta.raw(), MPFR_RNDN);
  return BigComplex(std::move(c), std::move(s));
}

BigComplex BigComplex::expi(const BigFloat& theta) {
  BigFloat c(theta.precision()), s(theta.precision());
  mpfr_sin_cos(s.raw(), c.raw(), theta.raw(), MPFR_RNDN);
  return BigComplex(std::move(c), std::move(s));
}

BigComplex& BigComplex::operator+=(const BigComplex& o) {
  re += o.re;
  im += o.im;
  return *this;
}
BigComplex& BigComplex::operator-=(const BigComplex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}
BigComplex& BigComplex::operator*=(const BigComplex& o) {
  BigFloat r = re * o.re - im * o.im;
  BigFloat i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}
BigComplex& BigComplex::operator*=(const BigFloat& o) {
  re *= o;
  im *= o;
  return *this;
}
BigComplex& BigComplex::operator/=(const BigComplex& o) {
  BigFloat n = o.norm();
  BigFloat r = (re * o.re + im * o.im) / n;
  BigFloat i = (im * o.re - re * o.im) / n;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

BigFloat BigComplex::norm() const { return re * re + im * im; }
BigFloat BigComplex::abs() const {
  BigFloat r(precision());
  mpfr_hypot(r.raw(), re.raw(), im.raw(), MPFR_RNDN);
  return r;
}

BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
BigComplex operator*(BigComplex a, const BigFloat& b) { return a *= b; }
BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }

BigComplex pow_si(const BigComplex& z, long e) {
  if (e < 0) return BigComplex(1L, z.precision()) / pow_si(z, -e);
  BigComplex r(1L, z.precision());
  BigComplex b = z;
  while (e > 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

BigComplex exp(const BigComplex& z) {
  BigComplex r = BigComplex::expi(z.im);
  r *= exp(z.re);
  return r;
}

}  // namespace gppv
