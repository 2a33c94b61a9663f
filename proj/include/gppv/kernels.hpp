#pragma once

// Hot sums with an OpenMP implementation and a plain serial reference.
// Parallel versions split work into a fixed number of chunks that does not
// depend on the thread count, and combine chunk results in index order, so
// results are reproducible bit for bit across thread counts.

#include <cstdint>
#include <vector>

#include "gppv/bigfloat.hpp"
#include "gppv/puiseux.hpp"

namespace gppv::kernels {

constexpr int kChunks = 64;

BigComplex puiseux_eval_serial(const PuiseuxSeries& s, long k, const BigFloat& t, mpfr_prec_t prec);
BigComplex puiseux_eval_parallel(const PuiseuxSeries& s, long k, const BigFloat& t, mpfr_prec_t prec);

/// sum_i c_i e(n_i / (denom k)) e^{-t n_i / denom} over sorted exponents n
BigComplex qseries_eval_serial(const std::vector<std::int64_t>& n, const std::vector<std::int64_t>& c,
                               std::int64_t denom, long k, const BigFloat& t, mpfr_prec_t prec);
BigComplex qseries_eval_parallel(const std::vector<std::int64_t>& n, const std::vector<std::int64_t>& c,
                                 std::int64_t denom, long k, const BigFloat& t, mpfr_prec_t prec);

/// Gauss-type sum over mu in R^V where R is a list of residues mod 2k:
/// sum_mu e(mu^T W mu / 4k) prod_v f_v(mu_v).
/// phase4k[j] = e(j/4k); fval[v][r] = f_v(R[r]).
struct GaussSumInput {
  long k = 0;
  std::vector<std::vector<long>> w;       // integer linking matrix
  std::vector<long> residues;             // allowed mu_v values (mod 2k)
  std::vector<BigComplex> phase4k;        // size 4k
  std::vector<std::vector<BigComplex>> fval;
};
BigComplex gauss_sum_serial(const GaussSumInput& in, mpfr_prec_t prec);
BigComplex gauss_sum_parallel(const GaussSumInput& in, mpfr_prec_t prec);

}  // namespace gppv::kernels
