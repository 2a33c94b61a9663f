#pragma once

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "gppv/bigfloat.hpp"
#include "gppv/matrix.hpp"
#include "gppv/multilaurent.hpp"

namespace gppv {

/// b_{m,n,l} of the Euler-Maclaurin expansion (n >= 0)
Rational em_b(int m, int n, int l);
/// the coefficient B_{m,n}(alpha, lambda); three cases by n
Rational em_coefficients(int m, int n, const Rational& alpha, const Rational& lambda);

/// l in a + k Z_{>=0}; k = 0 means the single point a
struct Progression {
  long a = 0;
  long k = 1;
};
struct PolyTerm {
  Rational c;
  std::vector<int> exps;
};
using Polynomial = std::vector<PolyTerm>;

/// e^{sum t_i u_i} P(d/dt) prod e^{a_i t_i}/(1 - e^{k_i t_i}), truncated at total degree cap
MultiLaurent phi_F_generator(const std::vector<Progression>& prog, const Polynomial& p,
                             const std::vector<Rational>& u, int cap);

/// sum_m B_m f^(m)(0) t^{sum m}, collected by total degree
struct HadamardSeries {
  int low = 0;                     // degree of coeffs[0]
  std::vector<BigComplex> coeffs;  // degrees low .. low + size - 1
  BigComplex coefficient(int d, mpfr_prec_t prec) const;
  BigComplex eval(const BigFloat& t, int max_degree, mpfr_prec_t prec) const;
};
HadamardSeries hadamard(const MultiLaurent& phi, const std::function<BigComplex(const Monomial&)>& f,
                        mpfr_prec_t prec);

/// derivatives at 0 of f(x) = exp(x^T A x / 4), A = W^{-1}, i.e. f = e^{-Q(x)/4}.
/// Negative entries of m are antiderivatives g^(-1)(x) = -int_x^inf g.
class GaussianOracle {
 public:
  GaussianOracle(const RatMatrix& w, mpfr_prec_t prec);
  ~GaussianOracle();
  std::size_t dim() const;
  /// m >= 0: m! [x^m] exp(x^T A x / 4) by series exponentiation
  Rational exact(const std::vector<int>& m) const;
  /// m >= 0: derivative recursion f^(m+e_i) = sum_j A_ij/2 m_j f^(m-e_j)
  Rational exact_recursive(const std::vector<int>& m) const;
  /// any m; quadrature over the negative coordinates (tanh-sinh)
  BigFloat value(const std::vector<int>& m) const;
  BigComplex operator()(const Monomial& m) const;
  /// estimated quadrature error of the last non-exact evaluation
  double last_quadrature_error() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// tanh-sinh quadrature on [0, R]^dim of a function given pointwise
struct QuadratureResult {
  BigFloat value;
  double error = 0;
  bool converged = false;
  int levels = 0;
};
QuadratureResult tanh_sinh(const std::function<BigFloat(const std::vector<BigFloat>&)>& f, int dim,
                           const BigFloat& radius, mpfr_prec_t prec, int max_levels = 8);

/// 1-D harness: partial sums of F(l) f(t(l+alpha)) over the progression, F = P,
/// f = e^{-c x^2}, against phi_{F,alpha} (.) f truncated below total degree M
struct Asymp1DReport {
  std::vector<double> t;
  std::vector<double> error;
  HadamardSeries expansion;
  double slope = 0;
  bool exponentially_small = false;  // all errors at the noise floor
  int order = 0;                     // M
  bool passed() const { return exponentially_small || slope >= order - 0.5; }
};
Asymp1DReport check_asymp_lim_1d(const Progression& prog, const Polynomial& p, const Rational& alpha,
                                 const Rational& c, int order, const std::vector<Rational>& tgrid,
                                 mpfr_prec_t prec);
/// vertex version: sum_{l in 2Z+deg} e(mu l/2k) F_{deg,l} f(t l) against
/// (-1)^deg F_deg(zeta_2k^mu e^t) (.) f, f = e^{-c x^2}
Asymp1DReport check_asymp_f_v_1d(int deg, long k, long mu, const Rational& c, int order,
                                 const std::vector<Rational>& tgrid, mpfr_prec_t prec);

/// least-squares slope of log|err| against log t
double loglog_slope(const std::vector<double>& t, const std::vector<double>& err);

}  // namespace gppv
