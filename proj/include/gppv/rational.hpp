#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gppv {

using Integer = mpz_class;
using Rational = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }
long to_long(const Integer& z);
long to_long_exact(const Rational& q);  // throws unless q is an integer

Integer factorial(unsigned n);
Integer binomial(long n, long k);  // 0 outside 0 <= k <= n

/// Bernoulli number B_i with B_1 = -1/2.
const Rational& bernoulli_number(unsigned i);
/// B_i(x) = sum_j C(i,j) B_j x^{i-j}.
Rational bernoulli_polynomial(unsigned i, const Rational& x);

Rational pow(const Rational& q, long e);
Rational frac_part(const Rational& q);  // in [0,1)
Integer floor(const Rational& q);

}  // namespace gppv
