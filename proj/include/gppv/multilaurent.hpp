#pragma once

#include <array>
#include <climits>
#include <cstdint>
#include <utility>
#include <vector>

#include "gppv/cyclotomic.hpp"

namespace gppv {

constexpr int kMaxVars = 16;
using Monomial = std::array<std::int8_t, kMaxVars>;

int total_degree(const Monomial& m);
Monomial unit_monomial(int var, int power = 1);

/// Multivariate Laurent series in t_0..t_{n-1} with cyclotomic coefficients.
/// Stored monomials satisfy m_v >= lower[v] and sum m_v <= cap; everything
/// above the cap is unknown (truncated).
class MultiLaurent {
 public:
  using Term = std::pair<Monomial, CyclotomicNumber>;

  MultiLaurent() = default;
  MultiLaurent(int nvars, std::vector<int> lower, int cap);
  static MultiLaurent constant(int nvars, const CyclotomicNumber& c, int cap);

  int nvars() const { return nvars_; }
  const std::vector<int>& lower() const { return lower_; }
  int cap() const { return cap_; }
  int low_degree() const;  // sum of lower bounds
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  /// adds c t^m (dropped above the cap); m must respect the lower bounds
  void add(const Monomial& m, const CyclotomicNumber& c);
  CyclotomicNumber coefficient(const Monomial& m) const;
  /// bulk construction: push terms in any order, then finish_bulk() merges
  void add_unchecked(Term&& t);
  void finish_bulk();

  MultiLaurent& operator+=(const MultiLaurent& o);
  MultiLaurent& operator-=(const MultiLaurent& o);
  MultiLaurent& operator*=(const CyclotomicNumber& c);
  /// this += a * x
  void axpy(const CyclotomicNumber& a, const MultiLaurent& x);

  MultiLaurent truncated(int cap) const;
  MultiLaurent derivative(int var) const;
  /// f(-t): coefficient times (-1)^{sum m}
  MultiLaurent reflected() const;
  /// drops coefficients that vanish in the field
  void prune_zeros();

  /// smallest total degree among stored terms, INT_MAX if none
  int min_degree() const;
  /// smallest exponent of variable v among stored terms, INT_MAX if none
  int min_exponent(int var) const;

  /// coefficientwise equality over all monomials of total degree <= cap
  bool equal_within(const MultiLaurent& o, int cap) const;
  friend bool operator==(const MultiLaurent& a, const MultiLaurent& b);

 private:
  void sort_merge();

  int nvars_ = 0;
  std::vector<int> lower_;
  int cap_ = 0;
  std::vector<Term> terms_;  // sorted by monomial
};

/// Truncated product. lower bounds add; cap = min(cap_a + low_b, cap_b + low_a).
MultiLaurent operator*(const MultiLaurent& a, const MultiLaurent& b);
MultiLaurent operator+(MultiLaurent a, const MultiLaurent& b);
MultiLaurent operator-(MultiLaurent a, const MultiLaurent& b);
MultiLaurent multilaurent_mul(const MultiLaurent& a, const MultiLaurent& b);

}  // namespace gppv
