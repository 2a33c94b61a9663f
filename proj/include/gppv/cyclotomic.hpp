#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gppv/bigfloat.hpp"
#include "gppv/rational.hpp"

namespace gppv {

/// Exact element of Q(zeta_N), zeta_N = e(1/N).
///
/// Stored as a sparse lift sum_j (num_j/den) zeta_N^j with 0 <= j < N, so a
/// product with a root of unity is an exponent shift. The lift is not unique;
/// canonical() produces the unique representative in the basis
/// prod_q {omega_q^c : 0 <= c < phi(q)} over the prime powers q || N.
/// Arithmetic between different orders lifts both operands to the lcm.
class CyclotomicNumber {
 public:
  using Term = std::pair<std::uint32_t, Integer>;

  CyclotomicNumber() = default;
  CyclotomicNumber(const Rational& q);  // NOLINT: implicit by design
  CyclotomicNumber(long v) : CyclotomicNumber(Rational(v)) {}  // NOLINT

  /// c * zeta_order^exponent
  static CyclotomicNumber root(std::uint32_t order, std::int64_t exponent,
                               const Rational& c = Rational(1));
  /// e(x) = exp(2 pi i x), x rational
  static CyclotomicNumber e(const Rational& x);
  /// 1/(zeta_order^exponent - 1); requires zeta_order^exponent != 1
  static CyclotomicNumber inverse_root_minus_one(std::uint32_t order, std::int64_t exponent);
  static CyclotomicNumber from_parts(std::uint32_t order, Integer den, std::vector<Term> terms);
  static CyclotomicNumber from_power_basis(std::uint32_t order, const std::vector<Rational>& coeffs);

  std::uint32_t order() const { return order_; }
  const Integer& denominator() const { return den_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t support() const { return terms_.size(); }

  bool is_zero() const;
  bool is_rational() const;
  Rational rational_value() const;  // throws unless rational

  CyclotomicNumber lifted(std::uint32_t n) const;  // order() must divide n
  CyclotomicNumber canonical() const;
  CyclotomicNumber shrunk() const;  // canonical in the smallest Q(zeta_M) containing it
  /// coefficients (length phi(M)) of the minimal-order representative modulo Phi_M
  std::vector<Rational> power_basis(std::uint32_t* order_out = nullptr) const;

  BigComplex embed(mpfr_prec_t prec) const;
  CyclotomicNumber conj() const;
  CyclotomicNumber inverse() const;  // general field inverse (linear solve in the canonical basis)

  CyclotomicNumber& operator+=(const CyclotomicNumber& o);
  CyclotomicNumber& operator-=(const CyclotomicNumber& o);
  CyclotomicNumber& operator*=(const CyclotomicNumber& o);
  CyclotomicNumber& operator*=(const Rational& q);
  CyclotomicNumber operator-() const;
  /// this += a*b without materializing the product separately
  void add_product(const CyclotomicNumber& a, const CyclotomicNumber& b);
  CyclotomicNumber times_root(std::uint32_t order, std::int64_t exponent) const;

  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);
  friend bool operator!=(const CyclotomicNumber& a, const CyclotomicNumber& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void normalize();  // sort, merge, drop zero numerators, reduce content
  void compact_if_large();

  std::uint32_t order_ = 1;
  Integer den_ = 1;
  std::vector<Term> terms_;
};

CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b);
CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b);
CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b);

std::uint64_t euler_phi(std::uint64_t n);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);
/// integer coefficients of the n-th cyclotomic polynomial, low degree first
const std::vector<Integer>& cyclotomic_polynomial(std::uint32_t n);

}  // namespace gppv
