#pragma once

// JSON forms of the exact objects. Rationals are always "p/q" strings (or
// "p" when integral) so nothing passes through a double. ordered_json keeps
// insertion order, and every writer inserts in a fixed order, so dumps are
// byte stable.

#include <string>

#include <json.hpp>

#include "gppv/bigfloat.hpp"
#include "gppv/cyclotomic.hpp"
#include "gppv/graph.hpp"
#include "gppv/matrix.hpp"
#include "gppv/multilaurent.hpp"
#include "gppv/puiseux.hpp"

namespace gppv {

using Json = nlohmann::ordered_json;

/// Run configuration, echoed in every report.
struct Config {
  mpfr_prec_t precision = 128;
  Rational max_exponent = 0;  // 0: chosen from the tail target
  int cap = 6;                // Laurent cap for phi
  int fit_degree = 6;
  Rational grid_ratio{4, 5};
  double u0 = 1.5;  // largest sample in units of 1/(k sqrt(lambda))
  int samples = 9;
  double tail_target = 1e-20;
  double tol = 0;  // 0: per-command default
  std::string cache_dir;
  int threads = 0;  // 0: OpenMP default

  /// throws Error naming the first non-positive field
  void check() const;
};

Json rational_json(const Rational& q);
Rational rational_from_json(const Json& j);  // accepts "p/q" strings and integers

Json graph_to_json(const PlumbingGraph& g);
PlumbingGraph graph_from_json(const Json& j);

Json matrix_to_json(const RatMatrix& m);
RatMatrix matrix_from_json(const Json& j);

/// {"exponent": "coefficient", ...} in increasing exponent order
Json series_terms_json(const PuiseuxSeries& s);
Json puiseux_to_json(const PuiseuxSeries& s);
PuiseuxSeries puiseux_from_json(const Json& j);

/// minimal order and the power basis there (unique, so equal numbers give equal JSON)
Json cyclotomic_to_json(const CyclotomicNumber& c);
CyclotomicNumber cyclotomic_from_json(const Json& j);

Json multilaurent_to_json(const MultiLaurent& s);
MultiLaurent multilaurent_from_json(const Json& j);

/// decimal string that reads back to the same binary value
Json bigfloat_json(const BigFloat& x);
Json complex_json(const BigComplex& z);

Json config_to_json(const Config& c);
Config config_from_json(const Json& j);  // missing fields keep their defaults

/// canonical bytes used for hashing and caching
std::string dump_canonical(const Json& j);

}  // namespace gppv
