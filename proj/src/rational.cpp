#include "gppv/rational.hpp"

#include <mutex>
#include <vector>

namespace gppv {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw Error("empty rational");
  if (s.front() == '+') s.erase(s.begin());
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error("malformed rational: " + std::string(text));
  if (q.get_den() == 0) throw Error("zero denominator: " + std::string(text));
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }
std::string to_string(const Integer& z) { return z.get_str(10); }

long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw Error("integer out of range: " + z.get_str());
  return z.get_si();
}

long to_long_exact(const Rational& q) {
  if (!is_integer(q)) throw Error("expected an integer, got " + to_string(q));
  return to_long(q.get_num());
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

const Rational& bernoulli_number(unsigned i) {
  static std::mutex mu;
  static std::vector<Rational> table{Rational(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (table.size() <= i) {
    const unsigned n = static_cast<unsigned>(table.size());
    // sum_{j<=n} C(n+1, j) B_j = 0
    Rational acc = 0;
    for (unsigned j = 0; j < n; ++j) acc += Rational(binomial(n + 1, j)) * table[j];
    table.push_back(-acc / Rational(n + 1));
  }
  return table[i];
}

Rational bernoulli_polynomial(unsigned i, const Rational& x) {
  Rational acc = 0;
  Rational xp = 1;  // x^{i-j}, built from j = i downwards
  for (long j = i; j >= 0; --j) {
    acc += Rational(binomial(i, j)) * bernoulli_number(static_cast<unsigned>(j)) * xp;
    xp *= x;
  }
  return acc;
}

Rational pow(const Rational& q, long e) {
  if (e < 0) {
    if (q == 0) throw Error("zero to a negative power");
    return pow(Rational(1) / q, -e);
  }
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(e));
  r.canonicalize();
  return r;
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational frac_part(const Rational& q) { return q - Rational(floor(q)); }

}  // namespace gppv
