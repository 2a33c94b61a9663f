#include "gppv/puiseux.hpp"

#include <numeric>
#include <vector>

#include "gppv/kernels.hpp"

namespace gppv {

PuiseuxSeries::PuiseuxSeries(std::int64_t denom, Rational max_exponent)
    : denom_(denom), max_exponent_(std::move(max_exponent)) {
  if (denom_ <= 0) throw Error("Puiseux denominator must be positive");
}

void PuiseuxSeries::add_term(std::int64_t n, const Rational& c) {
  if (c == 0) return;
  if (Rational(n, denom_) > max_exponent_) return;
  auto [it, inserted] = terms_.emplace(n, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational PuiseuxSeries::coefficient(std::int64_t n) const {
  auto it = terms_.find(n);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational PuiseuxSeries::coefficient_at(const Rational& exponent) const {
  Rational n = exponent * denom_;
  if (!is_integer(n)) return 0;
  return coefficient(to_long(n.get_num()));
}

PuiseuxSeries PuiseuxSeries::rescaled(std::int64_t d) const {
  if (d % denom_ != 0) throw Error("rescale target is not a multiple of the denominator");
  PuiseuxSeries r(d, max_exponent_);
  std::int64_t f = d / denom_;
  for (const auto& [n, c] : terms_) r.terms_.emplace(n * f, c);
  return r;
}

PuiseuxSeries& PuiseuxSeries::operator+=(const PuiseuxSeries& o) {
  std::int64_t d = std::lcm(denom_, o.denom_);
  if (d != denom_) *this = rescaled(d);
  if (o.max_exponent_ < max_exponent_) {
    max_exponent_ = o.max_exponent_;
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (Rational(it->first, denom_) > max_exponent_)
        it = terms_.erase(it);
      else
        ++it;
    }
  }
  std::int64_t f = d / o.denom_;
  for (const auto& [n, c] : o.terms_) add_term(n * f, c);
  return *this;
}

PuiseuxSeries& PuiseuxSeries::operator*=(const Rational& q) {
  if (q == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [n, c] : terms_) c *= q;
  return *this;
}

bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  std::int64_t d = std::lcm(a.denom_, b.denom_);
  PuiseuxSeries x = a.rescaled(d), y = b.rescaled(d);
  return x.max_exponent_ == y.max_exponent_ && x.terms_ == y.terms_;
}

PuiseuxSeries operator+(PuiseuxSeries a, const PuiseuxSeries& b) { return a += b; }

BigComplex puiseux_eval(const PuiseuxSeries& s, long k, const BigFloat& t, mpfr_prec_t prec) {
  return kernels::puiseux_eval_parallel(s, k, t, prec);
}

BigComplex puiseux_eval(const PuiseuxSeries& s, long k, const Rational& t, mpfr_prec_t prec) {
  return puiseux_eval(s, k, BigFloat(t, prec + 32), prec);
}

}  // namespace gppv
