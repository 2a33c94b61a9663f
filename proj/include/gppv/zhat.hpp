#pragma once

#include <cstdint>
#include <vector>

#include "gppv/bigfloat.hpp"
#include "gppv/graph.hpp"
#include "gppv/lattice.hpp"
#include "gppv/puiseux.hpp"

namespace gppv {

/// v.p. Fourier coefficient F_{d,l} of (z - 1/z)^{2-d}
Rational f_coeff(int d, long l);
/// numeric v.p. coefficient: mean of the contour integrals at radii 1 +- eps
/// (trapezoid rule with `points` nodes)
BigComplex f_coeff_oracle(int d, long l, double eps, int points, mpfr_prec_t prec = 64);
/// same oracle for all l in [lmin, lmax] sharing the function evaluations
std::vector<BigComplex> f_coeff_oracle_range(int d, long lmin, long lmax, double eps, int points,
                                             mpfr_prec_t prec = 64);

/// The exponent shift -sum_v (w_v + 3)/4 carried by every Zhat_b.
Rational zhat_prefactor_exponent(const PlumbingGraph& g);
/// b-classes of (2Z^V + delta) / 2W Z^V, in the order used for b indices.
CosetSystem zhat_cosets(const PlumbingGraph& g);

/// Zhat_b for every class of zhat_cosets(g), truncated at max_exponent.
std::vector<PuiseuxSeries> zhat_all(const PlumbingGraph& g, const Rational& max_exponent);
/// Zhat_b (all classes) as flat sorted arrays: coefficient c[b][i] / scale at
/// q^{n[b][i] / denom}. Throws if a coefficient does not fit in 64 bits.
struct ZhatTable {
  std::int64_t denom = 1;
  std::int64_t scale = 1;  // 2^#nodes
  std::vector<std::vector<std::int64_t>> n, c;
  std::size_t terms() const {
    std::size_t t = 0;
    for (const auto& v : n) t += v.size();
    return t;
  }
};
ZhatTable zhat_table(const PlumbingGraph& g, const Rational& max_exponent);
/// Zhat_b for a single representative b (zero series if b is not = delta mod 2).
PuiseuxSeries zhat_series(const PlumbingGraph& g, const IntVec& b, const Rational& max_exponent);
/// reference construction through the generic box enumerator
PuiseuxSeries zhat_series_box(const PlumbingGraph& g, const IntVec& b, const Rational& max_exponent);

}  // namespace gppv
