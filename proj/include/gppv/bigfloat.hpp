#pragma once

#include <mpfr.h>

#include <string>

#include "gppv/rational.hpp"

namespace gppv {

constexpr mpfr_prec_t kDefaultPrecision = 128;

// Binary operations round to the larger precision of the two operands.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = kDefaultPrecision);
  BigFloat(long v, mpfr_prec_t prec);
  BigFloat(double v, mpfr_prec_t prec);
  BigFloat(const Rational& q, mpfr_prec_t prec);
  BigFloat(const Integer& z, mpfr_prec_t prec);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  static BigFloat pi(mpfr_prec_t prec);
  static BigFloat from_string(const std::string& s, mpfr_prec_t prec);

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);
  BigFloat operator-() const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string to_string(int digits = 0) const;  // 0 = enough digits to round-trip
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  long exponent2() const;  // binary exponent, so |x| < 2^exponent2

 private:
  mpfr_t v_;
};

BigFloat operator+(BigFloat a, const BigFloat& b);
BigFloat operator-(BigFloat a, const BigFloat& b);
BigFloat operator*(BigFloat a, const BigFloat& b);
BigFloat operator/(BigFloat a, const BigFloat& b);
bool operator<(const BigFloat& a, const BigFloat& b);
bool operator>(const BigFloat& a, const BigFloat& b);
bool operator<=(const BigFloat& a, const BigFloat& b);
bool operator>=(const BigFloat& a, const BigFloat& b);

BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat abs(const BigFloat& x);
BigFloat pow_si(const BigFloat& x, long e);
BigFloat ldexp(const BigFloat& x, long e);
BigFloat max(const BigFloat& a, const BigFloat& b);

class BigComplex {
 public:
  explicit BigComplex(mpfr_prec_t prec = kDefaultPrecision) : re(prec), im(prec) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  BigComplex(long r, mpfr_prec_t prec) : re(r, prec), im(0L, prec) {}

  /// e(x) = exp(2 pi i x) for rational x, with x reduced mod 1 first.
  static BigComplex e(const Rational& x, mpfr_prec_t prec);
  static BigComplex expi(const BigFloat& theta);

  mpfr_prec_t precision() const { return std::max(re.precision(), im.precision()); }

  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator*=(const BigFloat& o);
  BigComplex& operator/=(const BigComplex& o);
  BigComplex operator-() const { return BigComplex(-re, -im); }

  BigFloat norm() const;  // |z|^2
  BigFloat abs() const;
  BigComplex conj() const { return BigComplex(re, -im); }
  bool is_finite() const { return re.is_finite() && im.is_finite(); }

  BigFloat re;
  BigFloat im;
};

BigComplex operator+(BigComplex a, const BigComplex& b);
BigComplex operator-(BigComplex a, const BigComplex& b);
BigComplex operator*(BigComplex a, const BigComplex& b);
BigComplex operator*(BigComplex a, const BigFloat& b);
BigComplex operator/(BigComplex a, const BigComplex& b);
BigComplex pow_si(const BigComplex& z, long e);
BigComplex exp(const BigComplex& z);

}  // namespace gppv
