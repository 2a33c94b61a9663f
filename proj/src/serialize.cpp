#include "gppv/serialize.hpp"

#include <cmath>

namespace gppv {

namespace {

Rational parse_exponent_key(const std::string& key) { return parse_rational(key); }

const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw Error(std::string("json: missing field '") + name + "'");
  return *it;
}

}  // namespace

void Config::check() const {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw Error(std::string("config: ") + what + " must be positive");
  };
  need(precision >= 32, "precision (>= 32 bits)");
  need(max_exponent >= 0, "max_exponent");
  need(cap >= 0, "cap");
  need(fit_degree > 0, "fit_degree");
  need(grid_ratio > 0 && grid_ratio < 1, "grid_ratio (in (0,1))");
  need(u0 > 0, "u0");
  need(samples >= fit_degree + 2, "samples - fit_degree - 1");
  need(tail_target > 0, "tail_target");
  need(tol >= 0, "tol");
  need(threads >= 0, "threads");
}

Json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error("json: expected a rational string, got " + j.dump());
}

Json graph_to_json(const PlumbingGraph& g) {
  Json vs = Json::array();
  for (VertexId v : g.vertices()) vs.push_back(Json{{"id", v}, {"weight", rational_json(g.weight(v))}});
  Json es = Json::array();
  for (const auto& [a, b] : g.edges()) es.push_back(Json::array({a, b}));
  return Json{{"vertices", vs}, {"edges", es}};
}

PlumbingGraph graph_from_json(const Json& j) {
  if (!j.is_object()) throw Error("json graph: expected an object");
  PlumbingGraph g;
  for (const Json& v : field(j, "vertices")) g.add_vertex(field(v, "id").get<int>(), rational_from_json(field(v, "weight")));
  for (const Json& e : field(j, "edges")) {
    if (!e.is_array() || e.size() != 2) throw Error("json graph: an edge is a pair of ids");
    g.add_edge(e[0].get<int>(), e[1].get<int>());
  }
  return g;
}

Json matrix_to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) r.push_back(rational_json(m(i, c)));
    rows.push_back(r);
  }
  return rows;
}

RatMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error("json matrix: expected a nonempty array of rows");
  const std::size_t cols = j[0].size();
  RatMatrix m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw Error("json matrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = rational_from_json(j[i][c]);
  }
  return m;
}

Json series_terms_json(const PuiseuxSeries& s) {
  Json t = Json::object();
  for (const auto& [n, c] : s.terms()) {
    Rational e(n, s.denom());
    e.canonicalize();
    t[to_string(e)] = rational_json(c);
  }
  return t;
}

Json puiseux_to_json(const PuiseuxSeries& s) {
  return Json{{"denom", s.denom()}, {"max_exponent", rational_json(s.max_exponent())}, {"terms", series_terms_json(s)}};
}

PuiseuxSeries puiseux_from_json(const Json& j) {
  const std::int64_t d = field(j, "denom").get<std::int64_t>();
  if (d <= 0) throw Error("json series: denom must be positive");
  PuiseuxSeries s(d, rational_from_json(field(j, "max_exponent")));
  for (const auto& [key, val] : field(j, "terms").items()) {
    Rational n = parse_exponent_key(key) * d;
    s.add_term(to_long_exact(n), rational_from_json(val));
  }
  return s;
}

Json cyclotomic_to_json(const CyclotomicNumber& c) {
  std::uint32_t order = 1;
  std::vector<Rational> basis = c.power_basis(&order);
  Json b = Json::array();
  for (const Rational& q : basis) b.push_back(rational_json(q));
  return Json{{"order", order}, {"power_basis", b}};
}

CyclotomicNumber cyclotomic_from_json(const Json& j) {
  const std::uint32_t order = field(j, "order").get<std::uint32_t>();
  std::vector<Rational> b;
  for (const Json& q : field(j, "power_basis")) b.push_back(rational_from_json(q));
  if (order == 0 || b.size() != euler_phi(order)) throw Error("json cyclotomic: basis length must be phi(order)");
  return CyclotomicNumber::from_power_basis(order, b);
}

Json multilaurent_to_json(const MultiLaurent& s) {
  Json terms = Json::array();
  for (const auto& [m, c] : s.terms()) {
    Json mono = Json::array();
    for (int v = 0; v < s.nvars(); ++v) mono.push_back(static_cast<int>(m[static_cast<std::size_t>(v)]));
    terms.push_back(Json{{"m", mono}, {"c", cyclotomic_to_json(c)}});
  }
  return Json{{"nvars", s.nvars()}, {"lower", s.lower()}, {"cap", s.cap()}, {"terms", terms}};
}

MultiLaurent multilaurent_from_json(const Json& j) {
  const int n = field(j, "nvars").get<int>();
  if (n < 0 || n > kMaxVars) throw Error("json laurent: bad variable count");
  MultiLaurent s(n, field(j, "lower").get<std::vector<int>>(), field(j, "cap").get<int>());
  for (const Json& t : field(j, "terms")) {
    const Json& mono = field(t, "m");
    if (mono.size() != static_cast<std::size_t>(n)) throw Error("json laurent: monomial length");
    Monomial m{};
    for (int v = 0; v < n; ++v) m[static_cast<std::size_t>(v)] = static_cast<std::int8_t>(mono[static_cast<std::size_t>(v)].get<int>());
    s.add(m, cyclotomic_from_json(field(t, "c")));
  }
  return s;
}

Json bigfloat_json(const BigFloat& x) { return x.to_string(); }

Json complex_json(const BigComplex& z) { return Json{{"re", bigfloat_json(z.re)}, {"im", bigfloat_json(z.im)}}; }

Json config_to_json(const Config& c) {
  return Json{{"precision", c.precision},
              {"max_exponent", rational_json(c.max_exponent)},
              {"cap", c.cap},
              {"fit_degree", c.fit_degree},
              {"grid_ratio", rational_json(c.grid_ratio)},
              {"u0", c.u0},
              {"samples", c.samples},
              {"tail_target", c.tail_target},
              {"tol", c.tol},
              {"cache_dir", c.cache_dir},
              {"threads", c.threads}};
}

Config config_from_json(const Json& j) {
  Config c;
  if (!j.is_object()) throw Error("json config: expected an object");
  if (j.contains("precision")) c.precision = j["precision"].get<long>();
  if (j.contains("max_exponent")) c.max_exponent = rational_from_json(j["max_exponent"]);
  if (j.contains("cap")) c.cap = j["cap"].get<int>();
  if (j.contains("fit_degree")) c.fit_degree = j["fit_degree"].get<int>();
  if (j.contains("grid_ratio")) c.grid_ratio = rational_from_json(j["grid_ratio"]);
  if (j.contains("u0")) c.u0 = j["u0"].get<double>();
  if (j.contains("samples")) c.samples = j["samples"].get<int>();
  if (j.contains("tail_target")) c.tail_target = j["tail_target"].get<double>();
  if (j.contains("tol")) c.tol = j["tol"].get<double>();
  if (j.contains("cache_dir")) c.cache_dir = j["cache_dir"].get<std::string>();
  if (j.contains("threads")) c.threads = j["threads"].get<int>();
  c.check();
  return c;
}

std::string dump_canonical(const Json& j) { return j.dump(); }

}  // namespace gppv
