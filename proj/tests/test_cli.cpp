#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gppv/fixtures.hpp"
#include "gppv/serialize.hpp"

using namespace gppv;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
  Json json() const { return Json::parse(out); }
};

// runs the CLI with stdout captured and stderr dropped
Run cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + GPPV_CLI_PATH + std::string(" ") + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& tag) {
  fs::path d = fs::temp_directory_path() / ("gppv_cli_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("fixtures --list") {
  Run r = cli("fixtures --list");
  REQUIRE(r.status == 0);
  Json j = r.json();
  std::vector<std::string> names;
  for (const auto& f : j["fixtures"]) names.push_back(f["name"].get<std::string>());
  CHECK(names == fixture_names());
  Run s = cli("fixtures --show y2337");
  CHECK(s.status == 0);
  CHECK(graph_from_json(s.json()["graph"]) == fixture("y2337"));
}

TEST_CASE("zhat on the single vertex") {
  Run r = cli("zhat --graph fixtures:s3 --b-index 0 --max-exp 2");
  REQUIRE(r.status == 0);
  Json j = r.json();
  CHECK(j["series"].dump() == R"({"-1/2":"-2","1/2":"2"})");
  CHECK(j["precision"] == "exact");
  CHECK(j["truncation"]["max_exponent"] == "2");
  CHECK(j.contains("error_budget"));
  CHECK(cli("zhat --graph fixtures:s3 --b-index 1 --max-exp 2").status == 2);
}

TEST_CASE("reports are byte reproducible") {
  for (const char* args : {"zhat -g fixtures:y2337 --max-exp 10", "wrt -g fixtures:e8 --k 4",
                           "phi -g fixtures:a2 --k 3 --cap 2", "prune -g fixtures:h"}) {
    Run a = cli(std::string(args) + " --no-cache"), b = cli(std::string(args) + " --no-cache --threads 1");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("wrt algorithms agree") {
  auto value = [](const Json& j) { return std::stod(j["re"].get<std::string>()) + 7 * std::stod(j["im"].get<std::string>()); };
  for (const char* algo : {"naive", "tree", "exact"}) {
    Run r = cli(std::string("wrt -g fixtures:y2337 --k 5 --algo ") + algo);
    REQUIRE(r.status == 0);
    Json j = r.json();
    CHECK(j["precision"] == 128);
    CHECK(j["error_budget"].contains("certificate"));
    CHECK(value(j) == doctest::Approx(-1.9270509831248422 + 7 * -0.9510565162951536).epsilon(1e-12));
  }
  Run s3 = cli("wrt -g fixtures:s3 --k 7");
  CHECK(std::stod(s3.json()["re"].get<std::string>()) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("verify passes and emits convergence data") {
  const fs::path d = scratch("verify");
  Run r = cli("verify --graph fixtures:y2337 --k 3 --no-cache --emit-convergence " + (d / "c.tsv").string());
  REQUIRE(r.status == 0);
  Json j = r.json();
  CHECK(j["passed"] == true);
  CHECK(j["rel_error"].get<double>() <= 1e-4);
  CHECK(j["exact_rel_error"].get<double>() <= 1e-20);
  CHECK(j["error_budget"].contains("extrapolation"));
  CHECK(j["truncation"].contains("max_exponent"));
  const std::string tsv = slurp(d / "c.tsv");
  CHECK(tsv.rfind("t\tre\tim\n", 0) == 0);
  CHECK(std::count(tsv.begin(), tsv.end(), '\n') == 1 + static_cast<long>(j["samples"].size()));
  // an impossible tolerance fails with exit 1
  CHECK(cli("verify --graph fixtures:y2337 --k 3 --no-cache --tol 1e-30").status == 1);
  fs::remove_all(d);
}

TEST_CASE("verify-phi status") {
  Run r = cli("verify-phi --graph fixtures:y2337 --k 3");
  REQUIRE(r.status == 0);
  Json j = r.json();
  CHECK(j["status"] == "pass");
  CHECK(j["y_shape_ok"] == true);
  CHECK(j["b0"].dump() == j["gauss_sum"].dump());
}

TEST_CASE("validate and malformed input") {
  CHECK(cli("validate -g fixtures:e8").status == 0);
  const fs::path d = scratch("validate");
  {
    // Y(-1,-2,-3,-5) is not negative definite
    std::ofstream f(d / "y2335.json");
    f << graph_to_json(star_graph(-1, {-2, -3, -5})).dump();
  }
  Run bad = cli("validate -g " + (d / "y2335.json").string());
  CHECK(bad.status == 1);
  CHECK(bad.json()["negative_definite"] == false);
  CHECK(cli("wrt -g " + (d / "y2335.json").string() + " --k 3").status == 2);

  Run nofile = cli("wrt -g /nonexistent.json --k 3");
  CHECK(nofile.status == 2);
  CHECK(nofile.json().contains("error"));
  Run junk = cli("wrt -g '{\"vertices\": 3}' --k 3");
  CHECK(junk.status == 2);
  CHECK(junk.json().contains("error"));
  CHECK(cli("wrt -g fixtures:s3 --k three").status == 2);
  CHECK(cli("nonsense").status == 2);
  fs::remove_all(d);
}

TEST_CASE("neumann moves from the command line") {
  Run list = cli("neumann -g fixtures:a2 --list");
  REQUIRE(list.status == 0);
  CHECK(list.json()["moves"].size() > 0);
  Run up = cli("neumann -g fixtures:a2 --move blow_down_leaf --inverse --at 0 --check-wrt 4");
  REQUIRE(up.status == 0);
  PlumbingGraph g = graph_from_json(up.json()["result"]);
  CHECK(g.size() == 3);
  CHECK(up.json()["rel_error"].get<double>() <= 1e-18);
  // a lone vertex is not a leaf with a neighbour
  Run down = cli("neumann -g fixtures:s3 --move blow_down_leaf --at 0");
  CHECK(down.status == 1);
}

TEST_CASE("reciprocity from the command line") {
  Run r = cli("reciprocity --form=-1 --k 2");
  REQUIRE(r.status == 0);
  Json it = r.json()["instances"][0];
  CHECK(std::stod(it["lhs"]["re"].get<std::string>()) == doctest::Approx(1.0));
  CHECK(std::stod(it["lhs"]["im"].get<std::string>()) == doctest::Approx(-1.0));
  Run rand = cli("reciprocity --random 30 --seed 3");
  CHECK(rand.status == 0);
  CHECK(rand.json()["instances"].size() == 30);
  CHECK(cli("reciprocity --form=-1 --k 1").status == 1);  // hypotheses fail
}

TEST_CASE("cache through the environment") {
  const fs::path d = scratch("cache");
  const std::string env = "GPPV_CACHE_DIR=" + d.string();
  const std::string args = "zhat -g fixtures:y2337 --max-exp 8";
  Run a = cli(args, env);
  REQUIRE(a.status == 0);
  int entries = 0;
  for (const auto& e : fs::directory_iterator(d)) entries += e.path().extension() == ".json";
  CHECK(entries == 1);
  Run b = cli(args, env);
  CHECK(b.out == a.out);
  Run c = cli(args + " --self-check", env);
  CHECK(c.status == 0);
  CHECK(c.out == a.out);
  // changed truncation: a new entry
  CHECK(cli("zhat -g fixtures:y2337 --max-exp 9", env).status == 0);
  entries = 0;
  for (const auto& e : fs::directory_iterator(d)) entries += e.path().extension() == ".json";
  CHECK(entries == 2);
  // a corrupted entry is recomputed and the output is unchanged
  for (const auto& e : fs::directory_iterator(d)) {
    std::ofstream f(e.path(), std::ios::trunc);
    f << "not json";
  }
  Run d2 = cli(args, env);
  CHECK(d2.status == 0);
  CHECK(d2.out == a.out);
  fs::remove_all(d);
}
