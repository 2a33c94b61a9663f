#pragma once

#include <optional>

#include "gppv/bigfloat.hpp"
#include "gppv/cyclotomic.hpp"
#include "gppv/graph.hpp"
#include "gppv/matrix.hpp"

namespace gppv {

struct WrtValue {
  long k = 0;
  mpfr_prec_t precision = kDefaultPrecision;
  BigComplex value;
  BigFloat certificate;  // bound on the accumulated rounding error
  bool homology_sphere = true;  // |det W| == 1
};

/// zeta_8^|V| zeta_4k^{-sum(w+3)} / (2 sqrt(2k)^|V| (zeta_2k - zeta_2k^{-1}))
BigComplex wrt_prefactor(const PlumbingGraph& g, long k, mpfr_prec_t prec);

/// direct sum over ((Z \ kZ)/2kZ)^V; (2k-2)^|V| terms
WrtValue wrt_naive(const PlumbingGraph& g, long k, mpfr_prec_t prec);
/// the same sum by message passing over the tree (root: vertex of maximal degree)
WrtValue wrt_contracted(const PlumbingGraph& g, long k, mpfr_prec_t prec,
                        std::optional<VertexId> root = std::nullopt);

/// Exact Gauss sum sum_{mu in ((Z \ kZ)/2kZ)^V} e(mu^T W mu / 4k) prod_v F_v(zeta_2k^mu_v),
/// by exact tree contraction.
CyclotomicNumber wrt_gauss_sum_exact(const PlumbingGraph& g, long k);
/// same sum, term by term (test reference)
CyclotomicNumber wrt_gauss_sum_exact_naive(const PlumbingGraph& g, long k);
/// exact F_v(zeta_2k^mu) = (zeta_2k^mu - zeta_2k^-mu)^{2 - deg}; throws at a pole
CyclotomicNumber f_at_root(int deg, long k, long mu);

/// Gauss sum reciprocity on L = Z^n with <x,y> = x^T B y, h given by the
/// matrix H acting on coordinates, u in (1/k) L.
struct ReciprocityResult {
  bool hypotheses_ok = false;
  std::vector<std::string> failures;
  int signature = 0;
  long lhs_terms = 0, rhs_terms = 0;
  BigComplex lhs, rhs;
};
ReciprocityResult reciprocity_both_sides(const RatMatrix& form, long k, const std::vector<Rational>& u,
                                         const RatMatrix& h, mpfr_prec_t prec);

}  // namespace gppv
