#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "gppv/graph.hpp"
#include "gppv/matrix.hpp"

namespace gppv {

Rational det_w(const RatMatrix& w);
RatMatrix w_inverse(const RatMatrix& w);
/// Q(l) = -l^T W^{-1} l
Rational q_form(const RatMatrix& w, const std::vector<Rational>& l);
Rational q_form(const RatMatrix& w, const IntVec& l);
/// Gershgorin bound max_v (|w_vv| + sum_{u != v} |w_uv|) >= rho(-W)
Rational gershgorin_bound(const RatMatrix& w);

/// Z^n / B Z^n, optionally restricted to classes meeting 2Z^n + parity.
class CosetSystem {
 public:
  CosetSystem() = default;
  CosetSystem(const IntMatrix& basis, std::optional<IntVec> parity);

  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }
  const IntMatrix& hnf() const { return hnf_; }
  const std::vector<IntVec>& reps() const { return reps_; }
  std::size_t size() const { return reps_.size(); }
  const std::vector<Integer>& invariant_factors() const { return invariants_; }

  /// canonical point of the class of x in the HNF box
  IntVec reduce(const IntVec& x) const;
  bool contains(const IntVec& x) const;  // x in B Z^n
  bool equivalent(const IntVec& x, const IntVec& y) const;
  /// index into reps() of the class of x, or -1 if the class is filtered out
  long index_of(const IntVec& x) const;

 private:
  IntMatrix basis_, hnf_;
  std::vector<std::vector<long>> hnf_long_;
  std::vector<Integer> invariants_;
  std::vector<IntVec> reps_;
  std::map<IntVec, long> index_;
};

CosetSystem coset_reps(const IntMatrix& basis, std::optional<IntVec> parity = std::nullopt);
IntMatrix integer_matrix(const RatMatrix& w);

/// Integer quadratic form data for Q = -W^{-1}: Q(l) = l^T A l / D, D = |det W|.
struct QFormData {
  std::size_t n = 0;
  std::vector<std::vector<long>> a;
  long d = 1;
  explicit QFormData(const RatMatrix& w);
  __int128 numerator(const IntVec& l) const;
};

/// Points l in b + 2W Z^n with Q(l)/4 <= bound, each exactly once, via the
/// Gershgorin box intersected with the coset (HNF coordinates).
std::vector<IntVec> enumerate_coset_in_ellipsoid(const RatMatrix& w, const IntVec& b, const Rational& bound);

/// Per-coordinate restriction for the Zhat enumerator: either a finite value
/// set, or all integers of a given parity.
struct CoordinateChoice {
  bool free = false;
  int parity = 0;
  IntVec values;
};

/// All integer l with l_v in choice_v and Q(l)/4 <= bound (any coset).
/// emit(l, numerator) receives the exact numerator of Q(l) over D.
/// Free coordinates are enumerated with Fincke-Pohst on the induced form.
void enumerate_restricted_ellipsoid(const RatMatrix& w, const std::vector<CoordinateChoice>& choice,
                                    const Rational& bound,
                                    const std::function<void(const IntVec&, __int128)>& emit);

struct SchurResult {
  RatMatrix S;  // (C - B^T A^{-1} B)^{-1}
  RatMatrix T;  // -A^{-1} B
  bool inverse_identity = false;
  bool determinant_identity = false;
};
/// X split as [[A, B], [B^T, C]] with A indexed by `first` and C by the rest
SchurResult schur_complement(const RatMatrix& x, const std::vector<std::size_t>& first);

}  // namespace gppv
