#pragma once

#include <cstdint>
#include <map>

#include "gppv/bigfloat.hpp"
#include "gppv/rational.hpp"

namespace gppv {

/// Finite q-series sum_n c_n q^{n/D}, truncated at max_exponent.
class PuiseuxSeries {
 public:
  explicit PuiseuxSeries(std::int64_t denom = 1, Rational max_exponent = 0);

  std::int64_t denom() const { return denom_; }
  const Rational& max_exponent() const { return max_exponent_; }
  const std::map<std::int64_t, Rational>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// adds c q^{n/D}; exponents above max_exponent are dropped
  void add_term(std::int64_t n, const Rational& c);
  Rational coefficient(std::int64_t n) const;
  Rational coefficient_at(const Rational& exponent) const;

  /// re-expresses over denominator d (a multiple of denom())
  PuiseuxSeries rescaled(std::int64_t d) const;
  PuiseuxSeries& operator+=(const PuiseuxSeries& o);
  PuiseuxSeries& operator*=(const Rational& q);

  friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b);

 private:
  std::int64_t denom_;
  Rational max_exponent_;
  std::map<std::int64_t, Rational> terms_;
};

PuiseuxSeries operator+(PuiseuxSeries a, const PuiseuxSeries& b);

/// sum of terms at q = zeta_k e^{-t}, q^x := e(x/k) e^{-xt}; no tail correction
BigComplex puiseux_eval(const PuiseuxSeries& s, long k, const BigFloat& t, mpfr_prec_t prec);
BigComplex puiseux_eval(const PuiseuxSeries& s, long k, const Rational& t, mpfr_prec_t prec);

}  // namespace gppv
