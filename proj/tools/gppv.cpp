// gppv: command line front end. Every report is one JSON object on stdout
// (or --output), exit status 0 iff its "passed" field is true, 2 on bad input.

#include <omp.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "gppv/asymptotics.hpp"
#include "gppv/cache.hpp"
#include "gppv/fixtures.hpp"
#include "gppv/graph.hpp"
#include "gppv/pruning.hpp"
#include "gppv/radial.hpp"
#include "gppv/serialize.hpp"
#include "gppv/wrt.hpp"
#include "gppv/zhat.hpp"

using namespace gppv;

namespace {

struct Args {
  std::string config_file, cache_dir, output;
  long precision = 0;
  int threads = -1;
  bool self_check = false, timings = false, no_cache = false;

  std::string graph;
  long k = 0;
  long b_index = 0;
  std::string max_exp = "2";
  std::string algo;
  int cap = -1;
  int level = -1;
  double tol = 0;
  std::string emit;
  int degree = 0, samples = 0;
  double u0 = 0;
  std::string ratio;

  bool list = false;
  std::string show;

  std::string move;
  bool inverse = false;
  int sign = -1;
  std::vector<int> at, split_neighbors;
  std::string split_weight = "0";
  int new_id = -1, new_id2 = -1;
  long check_k = 0;

  std::string form, h, u;
  int random = 0;
  unsigned seed = 1;
};

PlumbingGraph load_graph(const std::string& spec) {
  if (spec.empty()) throw Error("--graph is required");
  if (spec.rfind("fixtures:", 0) == 0) return fixture(spec.substr(9));
  if (spec.front() == '{') return graph_from_json(Json::parse(spec));
  std::ifstream in(spec);
  if (!in) throw Error("cannot read graph file " + spec);
  return graph_from_json(Json::parse(in));
}

std::vector<Rational> parse_list(const std::string& s) {
  std::vector<Rational> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_rational(item));
  return out;
}

// "a,b;c,d"
RatMatrix parse_matrix(const std::string& s) {
  std::vector<std::vector<Rational>> rows;
  std::stringstream ss(s);
  std::string row;
  while (std::getline(ss, row, ';')) rows.push_back(parse_list(row));
  if (rows.empty()) throw Error("empty matrix");
  RatMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw Error("ragged matrix: " + s);
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

double rel(const BigComplex& a, const BigComplex& b) {
  BigFloat d = (a - b).abs(), s = b.abs();
  if (s.is_zero()) return d.to_double();
  return (d / s).to_double();
}

Json ints(const IntVec& v) {
  Json j = Json::array();
  for (long x : v) j.push_back(x);
  return j;
}

template <class Map>
Json id_map(const Map& m) {
  Json j = Json::object();
  for (const auto& [id, val] : m) j[std::to_string(id)] = to_string(val);
  return j;
}

Json move_json(const NeumannMove& m) {
  Json j{{"kind", to_string(m.kind)}, {"inverse", m.inverse}, {"sign", m.sign}, {"location", m.location}};
  if (m.kind == MoveKind::ZeroMerge && m.inverse) {
    j["split_weight"] = rational_json(m.split_weight);
    j["split_neighbors"] = m.split_neighbors;
  }
  return j;
}

MoveKind parse_move_kind(const std::string& s) {
  for (MoveKind k : {MoveKind::BlowDownEdge, MoveKind::BlowDownLeaf, MoveKind::ZeroMerge})
    if (to_string(k) == s) return k;
  throw Error("unknown move '" + s + "' (blow_down_edge, blow_down_leaf, zero_merge)");
}

// ---- commands; each fills `params` (the cache key part) before computing

struct Command {
  std::string name;
  bool needs_graph = true;
  bool cacheable = false;
  std::function<Json(const Args&, const Config&)> params;
  std::function<Json(const Args&, const Config&, const PlumbingGraph&)> run;
};

Json header(const std::string& cmd, const PlumbingGraph* g, const Config& c, const Json& params) {
  Json j{{"command", cmd}};
  if (g) j["graph"] = graph_to_json(*g);
  Json cj = config_to_json(c);
  cj.erase("cache_dir");
  cj.erase("threads");
  j["config"] = cj;
  j["params"] = params;
  return j;
}

Json run_validate(const PlumbingGraph& g) {
  ValidationReport v = validate(g);
  Json minors = Json::array();
  for (const auto& m : v.leading_minors) minors.push_back(rational_json(m));
  return Json{{"precision", "exact"},
              {"truncation", nullptr},
              {"error_budget", "0"},
              {"nonempty", v.nonempty},
              {"connected", v.connected},
              {"acyclic", v.acyclic},
              {"negative_definite", v.negative_definite},
              {"integer_weights", v.integer_weights},
              {"det", rational_json(v.det)},
              {"leading_minors", minors},
              {"failures", v.failures},
              {"passed", v.ok()}};
}

Json run_neumann(const Args& a, const Config& c, const PlumbingGraph& g) {
  Json r{{"precision", c.precision}, {"truncation", nullptr}};
  if (a.list || a.move.empty()) {
    Json moves = Json::array();
    for (const auto& m : applicable_moves(g)) moves.push_back(move_json(m));
    r["error_budget"] = "0";
    r["moves"] = moves;
    r["passed"] = true;
    return r;
  }
  NeumannMove m;
  m.kind = parse_move_kind(a.move);
  m.inverse = a.inverse;
  m.sign = a.sign;
  m.location = a.at;
  m.split_weight = parse_rational(a.split_weight);
  m.split_neighbors = a.split_neighbors;
  m.new_id = a.new_id;
  m.new_id2 = a.new_id2;
  r["move"] = move_json(m);
  PlumbingGraph out;
  try {
    out = apply_neumann(g, m);
  } catch (const Error& e) {
    r["error_budget"] = "0";
    r["applied"] = false;
    r["reason"] = e.what();
    r["passed"] = false;
    return r;
  }
  r["applied"] = true;
  r["result"] = graph_to_json(out);
  bool ok = true;
  if (a.check_k > 0) {
    const double tol = c.tol > 0 ? c.tol : 1e-18;
    WrtValue before = wrt_contracted(g, a.check_k, c.precision);
    WrtValue after = wrt_contracted(out, a.check_k, c.precision);
    const double err = rel(after.value, before.value);
    r["error_budget"] = Json{{"tol", tol}, {"certificate", bigfloat_json(before.certificate + after.certificate)}};
    r["wrt_before"] = complex_json(before.value);
    r["wrt_after"] = complex_json(after.value);
    r["rel_error"] = err;
    ok = err <= tol;
  } else {
    r["error_budget"] = "0";
  }
  r["passed"] = ok;
  return r;
}

Json params_zhat(const Args& a, const Config&) {
  return Json{{"b_index", a.b_index}, {"max_exp", rational_json(parse_rational(a.max_exp))}};
}

Json run_zhat(const Args& a, const Config&, const PlumbingGraph& g) {
  const Rational n = parse_rational(a.max_exp);
  CosetSystem cs = zhat_cosets(g);
  if (a.b_index < 0 || static_cast<std::size_t>(a.b_index) >= cs.size())
    throw Error("--b-index out of range: " + std::to_string(cs.size()) + " classes");
  std::vector<PuiseuxSeries> all = zhat_all(g, n);
  const PuiseuxSeries& s = all[static_cast<std::size_t>(a.b_index)];
  return Json{{"precision", "exact"},
              {"truncation", Json{{"max_exponent", rational_json(n)}}},
              {"error_budget", "0"},
              {"classes", cs.size()},
              {"b", ints(cs.reps()[static_cast<std::size_t>(a.b_index)])},
              {"prefactor_exponent", rational_json(zhat_prefactor_exponent(g))},
              {"denom", s.denom()},
              {"series", series_terms_json(s)},
              {"passed", true}};
}

Json params_wrt(const Args& a, const Config&) {
  return Json{{"k", a.k}, {"algo", a.algo.empty() ? "tree" : a.algo}};
}

Json run_wrt(const Args& a, const Config& c, const PlumbingGraph& g) {
  if (a.k < 2) throw Error("--k must be >= 2");
  const std::string algo = a.algo.empty() ? "tree" : a.algo;
  Json r{{"precision", c.precision}, {"truncation", nullptr}};
  BigComplex v;
  BigFloat cert(c.precision);
  bool sphere = true;
  if (algo == "naive" || algo == "tree") {
    WrtValue w = algo == "naive" ? wrt_naive(g, a.k, c.precision) : wrt_contracted(g, a.k, c.precision);
    v = w.value;
    cert = w.certificate;
    sphere = w.homology_sphere;
  } else if (algo == "exact") {
    require_valid(g);
    CyclotomicNumber s = wrt_gauss_sum_exact(g, a.k);
    v = wrt_prefactor(g, a.k, c.precision) * s.embed(c.precision);
    // exact sum; only the embedding and the prefactor round
    cert = ldexp(v.abs(), -static_cast<long>(c.precision) + 8);
    sphere = abs(determinant(linking_matrix(g))) == 1;
    r["gauss_sum"] = cyclotomic_to_json(s);
  } else {
    throw Error("--algo must be naive, tree or exact");
  }
  r["error_budget"] = Json{{"certificate", bigfloat_json(cert)}};
  r["k"] = a.k;
  r["algo"] = algo;
  r["re"] = bigfloat_json(v.re);
  r["im"] = bigfloat_json(v.im);
  r["certificate"] = bigfloat_json(cert);
  r["homology_sphere"] = sphere;
  r["passed"] = v.is_finite();
  return r;
}

Json run_prune(const PlumbingGraph& g) {
  PruneChain ch = prune_sequence(g);
  Json levels = Json::array();
  for (const auto& L : ch.levels) {
    Json leaves = Json::object();
    for (const auto& [v, ls] : L.leaves) leaves[std::to_string(v)] = ls;
    levels.push_back(Json{{"n", L.n},
                          {"graph", graph_to_json(L.graph)},
                          {"M", id_map(L.M)},
                          {"w_tilde", id_map(L.w_tilde)},
                          {"leaves", leaves},
                          {"det", rational_json(L.det)},
                          {"pruned_norm", to_string(L.pruned_norm)}});
  }
  return Json{{"precision", "exact"},
              {"truncation", nullptr},
              {"error_budget", "0"},
              {"levels", levels},
              {"certificates_ok", ch.ok()},
              {"failures", ch.failures},
              {"passed", ch.ok()}};
}

int phi_cap(const Args& a, const Config& c, int fallback) { return a.cap >= 0 ? a.cap : (fallback >= 0 ? fallback : c.cap); }

Json params_phi(const Args& a, const Config& c) {
  return Json{{"k", a.k}, {"cap", phi_cap(a, c, -1)}, {"algo", a.algo.empty() ? "pruned" : a.algo}, {"level", a.level}};
}

Json phi_json(const PhiLaurent& p) {
  return Json{{"vars", p.vars}, {"series", multilaurent_to_json(p.series)}};
}

Json run_phi(const Args& a, const Config& c, const PlumbingGraph& g) {
  if (a.k < 2) throw Error("--k must be >= 2");
  const int cap = phi_cap(a, c, -1);
  PhiLaurent p = phi_gamma_k(g, a.k, cap, parse_phi_algo(a.algo.empty() ? "pruned" : a.algo), a.level);
  Json r{{"precision", "exact"}, {"truncation", Json{{"cap", cap}}}, {"error_budget", "0"}, {"k", a.k}};
  r["phi"] = phi_json(p);
  r["b0"] = cyclotomic_to_json(p.series.coefficient(Monomial{}));
  r["passed"] = true;
  return r;
}

// the properties only concern total degree <= 0, so the window defaults to 0
Json params_verify_phi(const Args& a, const Config& c) {
  return Json{{"k", a.k}, {"cap", phi_cap(a, c, 0)}, {"algo", a.algo.empty() ? "pruned" : a.algo}};
}

Json run_verify_phi(const Args& a, const Config& c, const PlumbingGraph& g) {
  if (a.k < 2) throw Error("--k must be >= 2");
  const int cap = phi_cap(a, c, 0);
  PhiLaurent p = phi_gamma_k(g, a.k, cap, parse_phi_algo(a.algo.empty() ? "pruned" : a.algo));
  PhiReport rep = check_phi_properties(p, g);
  Json r{{"precision", "exact"}, {"truncation", Json{{"cap", cap}}}, {"error_budget", "0"}, {"k", a.k}};
  r["status"] = rep.passed() ? "pass" : (rep.inconclusive() ? "inconclusive" : "fail");
  r["decisive"] = rep.decisive;
  r["no_negative"] = rep.no_negative;
  r["only_zero"] = rep.only_zero;
  r["b0_matches"] = rep.b0_matches;
  r["b0"] = cyclotomic_to_json(rep.b0);
  r["gauss_sum"] = cyclotomic_to_json(rep.gauss_sum);
  r["violations"] = rep.violations;
  // Y-graphs: one center of degree 3, three leaves
  if (g.size() == 4) {
    for (VertexId v : g.vertices())
      if (g.degree(v) == 3) r["y_shape_ok"] = y_graph_shape_ok(p, g, v);
  }
  bool ok = rep.passed() && (!r.contains("y_shape_ok") || r["y_shape_ok"].get<bool>());
  r["passed"] = ok;
  return r;
}

VerifyConfig verify_config(const Args& a, const Config& c) {
  VerifyConfig vc;
  vc.radial.prec = c.precision;
  vc.radial.degree = a.degree > 0 ? a.degree : c.fit_degree;
  vc.radial.samples = a.samples > 0 ? a.samples : c.samples;
  vc.radial.u0 = a.u0 > 0 ? a.u0 : c.u0;
  vc.radial.ratio = a.ratio.empty() ? c.grid_ratio : parse_rational(a.ratio);
  vc.radial.tail_target = c.tail_target;
  vc.tol = c.tol;
  if (vc.radial.samples < vc.radial.degree + 2) throw Error("need samples >= degree + 2");
  if (!(vc.radial.ratio > 0 && vc.radial.ratio < 1)) throw Error("grid ratio must lie in (0,1)");
  return vc;
}

Json params_verify(const Args& a, const Config& c) {
  VerifyConfig vc = verify_config(a, c);
  return Json{{"k", a.k},
              {"degree", vc.radial.degree},
              {"samples", vc.radial.samples},
              {"u0", vc.radial.u0},
              {"ratio", rational_json(vc.radial.ratio)},
              {"tol", vc.tol}};
}

Json run_verify(const Args& a, const Config& c, const PlumbingGraph& g) {
  if (a.k < 2) throw Error("--k must be >= 2");
  VerifyConfig vc = verify_config(a, c);
  std::unique_ptr<RadialSum> rs;
  if (c.max_exponent > 0) rs = std::make_unique<RadialSum>(g, c.max_exponent);
  VerifyReport v = verify_main_theorem(g, a.k, vc, rs.get());
  Json samples = Json::array();
  for (const auto& s : v.samples)
    samples.push_back(Json{{"t", rational_json(s.t)},
                           {"re", bigfloat_json(s.value.re)},
                           {"im", bigfloat_json(s.value.im)},
                           {"tail", s.tail}});
  Json coeffs = Json::array();
  for (const auto& z : v.fit.coeffs) coeffs.push_back(complex_json(z));
  Json r{{"precision", c.precision}};
  r["truncation"] = Json{{"max_exponent", rational_json(v.samples.empty() ? Rational(0) : v.samples[0].max_exponent)},
                         {"tail_target", vc.radial.tail_target}};
  r["error_budget"] = Json{{"extrapolation", v.fit.error},
                           {"fit_residual", v.fit.residual},
                           {"tail", v.fit.tail},
                           {"wrt_certificate", bigfloat_json(v.lhs.certificate)},
                           {"tol", v.tol}};
  r["k"] = v.k;
  r["lhs"] = complex_json(v.lhs.value);
  r["rhs_radial"] = complex_json(v.rhs);
  r["rel_error"] = v.rel_error;
  r["rhs_exact"] = complex_json(v.exact_rhs);
  r["exact_rel_error"] = v.exact_rel_error;
  r["phi_b0_matches"] = v.phi_b0_matches;
  r["fit"] = Json{{"degree", vc.radial.degree},
                  {"even_powers", vc.radial.even_powers},
                  {"condition", v.fit.condition},
                  {"ill_conditioned", v.fit.ill_conditioned},
                  {"coeffs", coeffs}};
  r["samples"] = samples;
  r["passed"] = v.passed;
  return r;
}

struct RecCase {
  RatMatrix form, h;
  long k;
  std::vector<Rational> u;
};

std::vector<RecCase> random_reciprocity_cases(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<RecCase> out;
  while (static_cast<int>(out.size()) < count) {
    const std::size_t n = 1 + rng() % 3;
    RatMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      b(i, i) = -2 * static_cast<long>(1 + rng() % 3);
      for (std::size_t j = 0; j < i; ++j) b(i, j) = b(j, i) = static_cast<long>(rng() % 3) - 1;
    }
    if (inertia(b).negative != static_cast<int>(n)) continue;
    const bool twisted = out.size() % 2;
    RatMatrix g = RatMatrix::identity(n);
    if (twisted) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) g(i, j) = g(j, i) = static_cast<long>(rng() % 3) - (i == j ? 0 : 1);
      if (determinant(g) == 0) continue;
    }
    const long index = to_long(Rational(abs(determinant(b))).get_num());
    const long k = 2 * index * static_cast<long>(1 + rng() % 2);
    double terms = 1;
    for (std::size_t i = 0; i < n; ++i) terms *= static_cast<double>(k);
    if (terms > 2e5) continue;
    std::vector<Rational> u(n);
    for (auto& x : u) {
      x = Rational(static_cast<long>(rng() % 7) - 3, k);
      x.canonicalize();
    }
    out.push_back(RecCase{b, twisted ? g * b : RatMatrix::identity(n), k, u});
  }
  return out;
}

Json run_reciprocity(const Args& a, const Config& c) {
  const double tol = c.tol > 0 ? c.tol : 1e-20;
  std::vector<RecCase> cases;
  if (a.random > 0) {
    cases = random_reciprocity_cases(a.random, a.seed);
  } else {
    if (a.form.empty() || a.k <= 0) throw Error("reciprocity needs --form and --k (or --random N)");
    RecCase rc{parse_matrix(a.form), RatMatrix(), a.k, {}};
    const std::size_t n = rc.form.rows();
    rc.h = a.h.empty() ? RatMatrix::identity(n) : parse_matrix(a.h);
    rc.u = a.u.empty() ? std::vector<Rational>(n, Rational(0)) : parse_list(a.u);
    if (rc.u.size() != n) throw Error("--u needs one entry per coordinate");
    cases.push_back(rc);
  }
  Json items = Json::array();
  bool all = true;
  double worst = 0;
  for (const auto& rc : cases) {
    ReciprocityResult r = reciprocity_both_sides(rc.form, rc.k, rc.u, rc.h, c.precision);
    Json it{{"form", matrix_to_json(rc.form)}, {"h", matrix_to_json(rc.h)}, {"k", rc.k}};
    Json u = Json::array();
    for (const auto& x : rc.u) u.push_back(rational_json(x));
    it["u"] = u;
    it["hypotheses_ok"] = r.hypotheses_ok;
    it["failures"] = r.failures;
    bool ok = r.hypotheses_ok;
    if (r.hypotheses_ok) {
      BigFloat scale = r.lhs.abs() + BigFloat(1L, c.precision);
      const double err = ((r.lhs - r.rhs).abs() / scale).to_double();
      worst = std::max(worst, err);
      it["signature"] = r.signature;
      it["lhs_terms"] = r.lhs_terms;
      it["rhs_terms"] = r.rhs_terms;
      it["lhs"] = complex_json(r.lhs);
      it["rhs"] = complex_json(r.rhs);
      it["error"] = err;
      ok = err <= tol;
    }
    it["passed"] = ok;
    all = all && ok;
    items.push_back(it);
  }
  return Json{{"precision", c.precision},
              {"truncation", nullptr},
              {"error_budget", Json{{"tol", tol}, {"worst", worst}}},
              {"instances", items},
              {"passed", all}};
}

Json run_fixtures(const Args& a) {
  if (!a.show.empty()) return Json{{"name", a.show}, {"graph", graph_to_json(fixture(a.show))}, {"passed", true}};
  Json list = Json::array();
  for (const auto& n : fixture_names()) list.push_back(Json{{"name", n}, {"description", fixture_description(n)}});
  return Json{{"fixtures", list}, {"passed", true}};
}

void emit_tsv(const Json& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "t\tre\tim\n";
  for (const auto& s : report.at("samples")) {
    Rational t = parse_rational(s.at("t").get<std::string>());
    out << BigFloat(t, 64).to_string(20) << '\t' << s.at("re").get<std::string>() << '\t'
        << s.at("im").get<std::string>() << '\n';
  }
}

void print_error(const std::string& cmd, const std::string& what) {
  Json e{{"command", cmd}, {"error", what}, {"passed", false}};
  std::cout << e.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  Args a;
  CLI::App app{"Exact and numeric checks for plumbed 3-manifold invariants"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", a.config_file, "JSON config file");
  app.add_option("--precision", a.precision, "working precision in bits");
  app.add_option("--cache-dir", a.cache_dir, "cache directory (GPPV_CACHE_DIR overrides)");
  app.add_flag("--no-cache", a.no_cache, "ignore the cache");
  app.add_flag("--self-check", a.self_check, "recompute cache hits and compare bytes");
  app.add_option("--threads", a.threads, "OpenMP threads");
  app.add_option("--output,-o", a.output, "write the report here instead of stdout");
  app.add_flag("--timings", a.timings, "add wall-clock seconds (breaks byte reproducibility)");

  auto graph_opt = [&](CLI::App* s) { s->add_option("--graph,-g", a.graph, "fixtures:NAME, a JSON file, or inline JSON"); };
  auto k_opt = [&](CLI::App* s) { s->add_option("--k", a.k, "level k"); };

  std::vector<Command> cmds;
  auto* s_validate = app.add_subcommand("validate", "check the graph hypotheses");
  graph_opt(s_validate);
  cmds.push_back({"validate", true, false, nullptr,
                  [](const Args&, const Config&, const PlumbingGraph& g) { return run_validate(g); }});

  auto* s_neumann = app.add_subcommand("neumann", "list or apply Neumann moves");
  graph_opt(s_neumann);
  s_neumann->add_flag("--list", a.list, "list applicable moves");
  s_neumann->add_option("--move", a.move, "blow_down_edge | blow_down_leaf | zero_merge");
  s_neumann->add_flag("--inverse", a.inverse, "blow up / split instead");
  s_neumann->add_option("--sign", a.sign, "+1 or -1");
  s_neumann->add_option("--at", a.at, "location vertex ids")->delimiter(',');
  s_neumann->add_option("--split-weight", a.split_weight, "weight of the split-off vertex");
  s_neumann->add_option("--split-neighbors", a.split_neighbors, "neighbours moving to it")->delimiter(',');
  s_neumann->add_option("--new-id", a.new_id, "id of the created vertex");
  s_neumann->add_option("--new-id2", a.new_id2, "id of the created 0 vertex");
  s_neumann->add_option("--check-wrt", a.check_k, "compare WRT at this k before and after");
  cmds.push_back({"neumann", true, false, nullptr, run_neumann});

  auto* s_zhat = app.add_subcommand("zhat", "Zhat_b as an exact q-series");
  graph_opt(s_zhat);
  s_zhat->add_option("--b-index", a.b_index, "index of the class b");
  s_zhat->add_option("--max-exp", a.max_exp, "largest exponent kept");
  cmds.push_back({"zhat", true, true, params_zhat, run_zhat});

  auto* s_wrt = app.add_subcommand("wrt", "WRT invariant by a finite Gauss sum");
  graph_opt(s_wrt);
  k_opt(s_wrt);
  s_wrt->add_option("--algo", a.algo, "naive | tree | exact");
  cmds.push_back({"wrt", true, true, params_wrt, run_wrt});

  auto* s_prune = app.add_subcommand("prune", "pruning chain with certificates");
  graph_opt(s_prune);
  cmds.push_back({"prune", true, true, [](const Args&, const Config&) { return Json::object(); },
                  [](const Args&, const Config&, const PlumbingGraph& g) { return run_prune(g); }});

  auto* s_phi = app.add_subcommand("phi", "Laurent expansion of phi_{Gamma,k}");
  graph_opt(s_phi);
  k_opt(s_phi);
  s_phi->add_option("--cap", a.cap, "total degree cap");
  s_phi->add_option("--algo", a.algo, "naive | tree | pruned");
  s_phi->add_option("--level", a.level, "prune level (pruned only; -1 = last)");
  cmds.push_back({"phi", true, true, params_phi, run_phi});

  auto* s_vphi = app.add_subcommand("verify-phi", "support and B_0 properties of phi");
  graph_opt(s_vphi);
  k_opt(s_vphi);
  s_vphi->add_option("--cap", a.cap, "total degree cap (default 0)");
  s_vphi->add_option("--algo", a.algo, "naive | tree | pruned");
  cmds.push_back({"verify-phi", true, true, params_verify_phi, run_verify_phi});

  auto* s_verify = app.add_subcommand("verify", "radial limit of the b-summed Zhat against WRT");
  graph_opt(s_verify);
  k_opt(s_verify);
  s_verify->add_option("--tol", a.tol, "relative tolerance (default 1e-4 for |V| <= 4, else 1e-3)");
  s_verify->add_option("--degree", a.degree, "fit degree");
  s_verify->add_option("--samples", a.samples, "number of grid points");
  s_verify->add_option("--u0", a.u0, "largest grid point in units of 1/(k sqrt(lambda))");
  s_verify->add_option("--ratio", a.ratio, "grid ratio (rational)");
  s_verify->add_option("--emit-convergence", a.emit, "write (t, re, im) rows to this TSV file");
  cmds.push_back({"verify", true, true, params_verify, run_verify});

  auto* s_rec = app.add_subcommand("reciprocity", "both sides of Gauss sum reciprocity");
  s_rec->add_option("--form", a.form, "bilinear form, rows separated by ';'");
  s_rec->add_option("--hmap", a.h, "matrix of h (default identity)");
  s_rec->add_option("--u", a.u, "u in (1/k)L, comma separated");
  k_opt(s_rec);
  s_rec->add_option("--random", a.random, "check N random instances instead");
  s_rec->add_option("--seed", a.seed, "seed for --random");
  s_rec->add_option("--tol", a.tol, "tolerance (default 1e-20)");
  cmds.push_back({"reciprocity", false, false, nullptr,
                  [](const Args& x, const Config& c, const PlumbingGraph&) { return run_reciprocity(x, c); }});

  auto* s_fix = app.add_subcommand("fixtures", "built-in graphs");
  s_fix->add_flag("--list", a.list, "names and descriptions");
  s_fix->add_option("--show", a.show, "print one graph as JSON");
  cmds.push_back({"fixtures", false, false, nullptr,
                  [](const Args& x, const Config&, const PlumbingGraph&) { return run_fixtures(x); }});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("", e.what());
    return 2;
  }

  const Command* cmd = nullptr;
  for (const auto& c : cmds)
    if (app.got_subcommand(c.name)) cmd = &c;
  if (!cmd) {
    print_error("", "no subcommand");
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  Json report;
  try {
    Config cfg;
    if (!a.config_file.empty()) {
      std::ifstream in(a.config_file);
      if (!in) throw Error("cannot read config " + a.config_file);
      cfg = config_from_json(Json::parse(in));
    }
    if (a.precision > 0) cfg.precision = a.precision;
    if (!a.cache_dir.empty()) cfg.cache_dir = a.cache_dir;
    if (a.threads >= 0) cfg.threads = a.threads;
    if (a.tol > 0) cfg.tol = a.tol;
    cfg.check();
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);

    PlumbingGraph g;
    if (cmd->needs_graph) g = load_graph(a.graph);
    const Json params = cmd->params ? cmd->params(a, cfg) : Json::object();

    auto compute = [&]() {
      Json r = header(cmd->name, cmd->needs_graph ? &g : nullptr, cfg, params);
      const Json body = cmd->run(a, cfg, g);
      for (const auto& [key, val] : body.items()) r[key] = val;
      return r.dump(2);
    };

    std::string bytes;
    std::optional<Cache> cache;
    if (cmd->cacheable && !a.no_cache) cache = Cache::open(cfg.cache_dir);
    bool self_check_failed = false;
    if (cache) {
      Json cfg_key = config_to_json(cfg);
      cfg_key.erase("cache_dir");
      cfg_key.erase("threads");
      const std::string key = Cache::key(graph_to_json(g), cmd->name, Json{{"params", params}, {"config", cfg_key}});
      Cache::Lookup l = cache->get_or_compute(key, compute, a.self_check);
      bytes = l.value;
      std::cerr << "cache: " << (l.hit ? "hit" : "miss") << ' ' << key;
      if (l.corrupt) std::cerr << " (corrupt entry replaced)";
      if (l.self_checked) std::cerr << (l.self_check_ok ? " (self-check ok)" : " (self-check MISMATCH)");
      std::cerr << '\n';
      self_check_failed = !l.self_check_ok;
    } else {
      bytes = compute();
    }
    report = Json::parse(bytes);
    if (a.timings) {
      report["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      bytes = report.dump(2);
    }
    if (!a.emit.empty()) emit_tsv(report, a.emit);

    if (a.output.empty()) {
      std::cout << bytes << '\n';
    } else {
      std::ofstream out(a.output);
      if (!out) throw Error("cannot write " + a.output);
      out << bytes << '\n';
    }
    const bool passed = report.value("passed", false) && !self_check_failed;
    return passed ? 0 : 1;
  } catch (const std::exception& e) {
    print_error(cmd->name, e.what());
    return 2;
  }
}
