#pragma once

#include <vector>

#include "gppv/asymptotics.hpp"
#include "gppv/graph.hpp"
#include "gppv/puiseux.hpp"
#include "gppv/wrt.hpp"
#include "gppv/zhat.hpp"

namespace gppv {

// The radial expansion is a series in u = k s sqrt(lambda), s = sqrt(t),
// lambda = largest eigenvalue of -W^-1, so the grid is laid out in u.
struct RadialConfig {
  mpfr_prec_t prec = 128;
  int degree = 6;          // fit degree (in t = s^2 when even_powers, else in s)
  bool even_powers = true;  // fit only even powers of s
  double u0 = 1.5;         // largest u
  Rational ratio{4, 5};    // s_j = s_0 ratio^j
  int samples = 9;         // needs >= degree + 2
  double tail_target = 1e-20;
  double safety = 10;
};

struct RadialSample {
  Rational t;
  BigComplex value;
  Rational max_exponent;  // truncation of the q-series
  double tail = 0;        // estimated omitted mass, safety factor included
  double safety = 10;
};

/// sum_{a,b} e(-k a W^-1 a - a W^-1 b) Zhat_b(zeta_k e^-t), with the Zhat
/// series computed once up to max_exponent and reused for every (k, t)
class RadialSum {
 public:
  RadialSum(const PlumbingGraph& g, const Rational& max_exponent);

  const PlumbingGraph& graph() const { return g_; }
  const Rational& max_exponent() const { return max_exponent_; }
  std::size_t a_classes() const { return a_reps_.size(); }
  std::size_t b_classes() const { return zhat_.n.size(); }
  const ZhatTable& zhat() const { return zhat_; }

  /// exact exponent -k a W^-1 a - a W^-1 b, as a rational mod 1
  Rational phase_exponent(long k, std::size_t a, std::size_t b) const;
  std::vector<BigComplex> phases(long k, mpfr_prec_t prec) const;
  RadialSample sample(long k, const Rational& t, mpfr_prec_t prec, double safety = 10) const;
  double tail_estimate(long k, const Rational& t, double safety = 10) const;

 private:
  PlumbingGraph g_;
  Rational max_exponent_;
  RatMatrix winv_;
  std::vector<IntVec> a_reps_, b_reps_;
  ZhatTable zhat_;
  double growth_ = 0;  // polynomial growth exponent of the shell mass
  std::vector<double> shell_;  // per b: sum |c| up to the truncation
};

/// truncation so that the tail at t_min is below `target` (before the safety factor)
Rational radial_truncation(const PlumbingGraph& g, const Rational& t_min, double target);

RadialSample radial_sum(const PlumbingGraph& g, long k, const Rational& t, const Rational& max_exponent,
                        mpfr_prec_t prec);

struct Extrapolation {
  BigComplex limit;
  std::vector<BigComplex> coeffs;  // fitted polynomial in s
  double residual = 0;
  double tail = 0;
  double error = 0;  // residual + tail
  double condition = 0;
  bool ill_conditioned = false;
};
/// least-squares polynomial of the given degree in x; the limit is its constant term
Extrapolation extrapolate(const std::vector<BigFloat>& x, const std::vector<BigComplex>& values, int degree,
                          mpfr_prec_t prec);
/// samples taken at t, fitted in s = sqrt(t) (or in t = s^2 when even_powers;
/// coeffs[j] is then the coefficient of s^{2j})
Extrapolation extrapolate(const std::vector<RadialSample>& samples, int degree, mpfr_prec_t prec,
                          bool even_powers = false);

/// largest eigenvalue of -W^-1 (double precision)
double radial_scale(const PlumbingGraph& g);
/// the s values: u0 ratio^j / (k sqrt(radial_scale)), rounded to rationals
std::vector<Rational> radial_grid(const RadialConfig& cfg, const PlumbingGraph& g, long k);
/// truncation covering every k in ks with the default layout
Rational radial_truncation(const PlumbingGraph& g, const RadialConfig& cfg, const std::vector<long>& ks);

struct VerifyConfig {
  RadialConfig radial;
  double tol = 0;  // 0: 1e-4 if |V| <= 4 else 1e-3
  bool phi_route = true;  // also compare B_0 of phi (pruned, cap 0)
};

struct VerifyReport {
  long k = 0;
  std::size_t vertices = 0;
  WrtValue lhs;
  BigComplex rhs;
  double rel_error = 0;
  Extrapolation fit;
  std::vector<RadialSample> samples;
  BigComplex exact_rhs;
  double exact_rel_error = 0;
  bool phi_b0_checked = false;
  bool phi_b0_matches = false;
  double tol = 0;
  bool passed = false;
  double seconds = 0;
};

VerifyReport verify_main_theorem(const PlumbingGraph& g, long k, const VerifyConfig& cfg,
                                 const RadialSum* shared = nullptr);

/// radial samples against zeta_8^|V| sqrt|det W| / sqrt(2k)^|V| (phi (.) e^{-Q/4})(sqrt t),
/// truncated at total degree D; the difference should be o(t^{D/2})
struct HadamardCheck {
  int D = 0;
  std::vector<double> t;
  std::vector<double> diff;
  std::vector<double> magnitude;  // |normalized radial sample|
  HadamardSeries series;
  double slope = 0;
  bool no_negative_powers = false;
  bool passed() const { return no_negative_powers && slope > D / 2.0; }
};
HadamardCheck check_radial_hadamard(const PlumbingGraph& g, long k, int D, const std::vector<Rational>& s_grid,
                                    const RadialConfig& cfg);

}  // namespace gppv
