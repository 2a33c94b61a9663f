#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "gppv/cache.hpp"
#include "gppv/fixtures.hpp"
#include "gppv/pruning.hpp"
#include "gppv/serialize.hpp"
#include "gppv/zhat.hpp"
#include "test_util.hpp"

using namespace gppv;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& tag) {
  fs::path d = fs::temp_directory_path() / ("gppv_test_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("graph json round trip") {
  std::mt19937 rng(5);
  std::vector<PlumbingGraph> gs;
  for (const auto& n : fixture_names()) gs.push_back(fixture(n));
  for (int i = 0; i < 10; ++i) gs.push_back(testing::random_tree(rng, 7));
  PlumbingGraph q;  // rational weights and scattered ids survive
  q.add_vertex(7, Rational(-5, 3));
  q.add_vertex(2, -2);
  q.add_edge(2, 7);
  gs.push_back(q);
  for (const auto& g : gs) {
    const std::string a = dump_canonical(graph_to_json(g));
    PlumbingGraph back = graph_from_json(Json::parse(a));
    CHECK(back == g);
    CHECK(back.vertices() == g.vertices());
    CHECK(dump_canonical(graph_to_json(back)) == a);
  }
  CHECK(dump_canonical(graph_to_json(q)) ==
        R"({"vertices":[{"id":7,"weight":"-5/3"},{"id":2,"weight":"-2"}],"edges":[[2,7]]})");
  // integers are accepted for weights
  auto g = graph_from_json(Json::parse(R"({"vertices":[{"id":0,"weight":-1}],"edges":[]})"));
  CHECK(g.weight(0) == -1);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"vertices":[{"id":0,"weight":"x"}],"edges":[]})")), Error);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"edges":[]})")), Error);
}

TEST_CASE("series json") {
  auto s = zhat_all(fixture("s3"), 2)[0];
  CHECK(series_terms_json(s).dump() == R"({"-1/2":"-2","1/2":"2"})");
  for (const char* name : {"y2337", "a3"}) {
    auto all = zhat_all(fixture(name), 6);
    for (const auto& z : all) {
      const std::string a = puiseux_to_json(z).dump();
      PuiseuxSeries back = puiseux_from_json(Json::parse(a));
      CHECK(back == z);
      CHECK(puiseux_to_json(back).dump() == a);
    }
  }
}

TEST_CASE("cyclotomic json is canonical") {
  // the same number from two lifts gives the same bytes
  CyclotomicNumber a = CyclotomicNumber::root(12, 3) + CyclotomicNumber::root(12, 9);  // i + (-i)
  CyclotomicNumber zero;
  CHECK(cyclotomic_to_json(a).dump() == cyclotomic_to_json(zero).dump());
  CyclotomicNumber b = CyclotomicNumber::root(8, 2, Rational(3, 2));
  CyclotomicNumber c = CyclotomicNumber::root(24, 6, Rational(3, 2));
  CHECK(cyclotomic_to_json(b).dump() == cyclotomic_to_json(c).dump());
  for (const auto& x : {a, b, CyclotomicNumber::e(Rational(5, 7)) * Rational(-2, 9) + Rational(1, 3)}) {
    CyclotomicNumber back = cyclotomic_from_json(cyclotomic_to_json(x));
    CHECK(back == x);
  }
  CHECK_THROWS_AS(cyclotomic_from_json(Json::parse(R"({"order":5,"power_basis":["1"]})")), Error);
}

TEST_CASE("multilaurent json round trip") {
  PhiLaurent p = phi_gamma_k(fixture("y2337"), 3, 2, PhiAlgo::Pruned);
  const std::string a = multilaurent_to_json(p.series).dump();
  MultiLaurent back = multilaurent_from_json(Json::parse(a));
  CHECK(back.equal_within(p.series, p.series.cap()));
  CHECK(back.cap() == p.series.cap());
  CHECK(back.lower() == p.series.lower());
  CHECK(multilaurent_to_json(back).dump() == a);
}

TEST_CASE("config json") {
  Config c;
  c.precision = 192;
  c.max_exponent = Rational(7, 2);
  c.grid_ratio = Rational(2, 3);
  c.cache_dir = "/tmp/x";
  const std::string a = config_to_json(c).dump();
  CHECK(config_to_json(config_from_json(Json::parse(a))).dump() == a);
  CHECK(config_from_json(Json::object()).precision == 128);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"grid_ratio":"3/2"})")), Error);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"samples":3})")), Error);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"precision":0})")), Error);
}

TEST_CASE("fnv1a reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("cache put, get, miss, corruption") {
  const fs::path d = scratch_dir("cache");
  Cache cache(d);
  const Json g = graph_to_json(fixture("y2337"));
  const std::string k1 = Cache::key(g, "zhat", Json{{"max_exp", "2"}});
  const std::string k2 = Cache::key(g, "zhat", Json{{"max_exp", "3"}});
  CHECK(k1 != k2);
  CHECK(k1 == Cache::key(g, "zhat", Json{{"max_exp", "2"}}));
  CHECK(k1 != Cache::key(g, "wrt", Json{{"max_exp", "2"}}));

  CHECK_FALSE(cache.get(k1).has_value());
  const std::string value = "{\n  \"x\": \"1/3\"\n}\n\x01 odd bytes";
  cache.put(k1, value);
  auto got = cache.get(k1);
  REQUIRE(got.has_value());
  CHECK(*got == value);
  CHECK_FALSE(cache.get(k2).has_value());
  // no temporaries left behind
  int files = 0;
  for (const auto& e : fs::directory_iterator(d)) files += e.path().extension() == ".json";
  CHECK(files == 1);

  // corrupt the payload: a miss flagged corrupt, then recompute overwrites
  {
    std::ofstream f(d / (k1 + ".json"), std::ios::app);
    f << "tampered";
  }
  bool corrupt = false;
  CHECK_FALSE(cache.get(k1, &corrupt).has_value());
  CHECK(corrupt);
  int calls = 0;
  auto compute = [&] {
    ++calls;
    return value;
  };
  auto l = cache.get_or_compute(k1, compute);
  CHECK_FALSE(l.hit);
  CHECK(l.corrupt);
  CHECK(calls == 1);
  CHECK(*cache.get(k1) == value);
  l = cache.get_or_compute(k1, compute);
  CHECK(l.hit);
  CHECK(calls == 1);
  l = cache.get_or_compute(k1, compute, true);
  CHECK(l.hit);
  CHECK(l.self_checked);
  CHECK(l.self_check_ok);
  CHECK(calls == 2);
  // a stale entry fails the self-check and is replaced
  cache.put(k1, "stale");
  l = cache.get_or_compute(k1, compute, true);
  CHECK_FALSE(l.self_check_ok);
  CHECK(l.value == value);
  CHECK(*cache.get(k1) == value);
  fs::remove_all(d);
}
