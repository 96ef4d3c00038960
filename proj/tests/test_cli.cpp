#include <catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

const std::string kCli = DUALIS_CLI_PATH;
const std::string kData = DUALIS_TEST_DATA;

int run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json report(const std::string& path) { return nlohmann::json::parse(slurp(path)); }

std::string tmp(const std::string& name) { return "/tmp/dualis_test_" + name + ".json"; }

}  // namespace

TEST_CASE("compute on a trivial 2-torus") {
  REQUIRE(run("compute " + kData + "/torus2_trivial.json -o " + tmp("t2")) == 0);
  auto r = report(tmp("t2"));
  CHECK(r["dimensions"]["E"]["ordinary"] == nlohmann::json::array({1, 2, 1}));
  CHECK(r["family"] == "torus");
  // H^1 of T(g) for g = [[2,1],[1,3]]
  bool seen = false;
  for (const auto& h : r["hecke"])
    if (h["degree"] == 1 && h["variant"] == "ordinary") {
      CHECK(h["charpoly"] == nlohmann::json::array({"1/1", "-5/1", "5/1"}));
      seen = true;
    }
  CHECK(seen);
}

TEST_CASE("compute with a nontrivial character gives zero") {
  REQUIRE(run("compute " + kData + "/circle_alpha2.json -o " + tmp("a2")) == 0);
  auto r = report(tmp("a2"));
  for (const char* v : {"ordinary", "compact", "interior"})
    CHECK(r["dimensions"]["E"][v] == nlohmann::json::array({0, 0}));
}

TEST_CASE("compute on Gamma_0(11)") {
  REQUIRE(run("compute " + kData + "/gamma0_11.json --degrees 1..1 --variants interior -o " + tmp("g11")) == 0);
  auto r = report(tmp("g11"));
  CHECK(r["dimensions"]["E"]["interior"] == nlohmann::json::array({2}));
  REQUIRE(r["hecke"].size() == 1);
  CHECK(r["hecke"][0]["charpoly"] == nlohmann::json::array({"1/1", "4/1", "4/1"}));
}

TEST_CASE("reports are deterministic") {
  REQUIRE(run("compute " + kData + "/torus2_trivial.json -o " + tmp("d1")) == 0);
  REQUIRE(run("compute " + kData + "/torus2_trivial.json -o " + tmp("d2")) == 0);
  CHECK(slurp(tmp("d1")) == slurp(tmp("d2")));
  REQUIRE(run("--seed 9 verify " + kData + "/circle_doubling.json --checks double_coset,coset_independence -o " + tmp("v1")) == 0);
  REQUIRE(run("--seed 9 verify " + kData + "/circle_doubling.json --checks double_coset,coset_independence -o " + tmp("v2")) == 0);
  CHECK(slurp(tmp("v1")) == slurp(tmp("v2")));
}

TEST_CASE("verify exit codes") {
  CHECK(run("verify " + kData +
            "/torus2_trivial.json --checks duality,grothendieck,transfer,hecke_h0,double_coset,adjointness,"
            "coset_independence -o " + tmp("all")) == 0);
  for (const auto& c : report(tmp("all"))["checks"]) CHECK(c["pass"] == true);
  CHECK(run("verify " + kData + "/rotation4_regular.json --checks finite_quotient,duality -o " + tmp("rot")) == 0);
  CHECK(run("verify " + kData + "/rotation4_regular.json --checks grothendieck -o " + tmp("x")) == 4);
  CHECK(run("verify " + kData + "/circle_alpha2.json --checks hecke_h0 -o " + tmp("x")) == 4);
  CHECK(run("verify " + kData + "/torus2_trivial.json --checks finite_quotient -o " + tmp("x")) == 4);
  CHECK(run("compute " + kData + "/bad_level.json -o " + tmp("x")) == 2);
  CHECK(run("compute " + kData + "/does_not_exist.json -o " + tmp("x")) == 2);
  CHECK(run("verify " + kData + "/torus2_trivial.json --checks nonsense -o " + tmp("x")) == 2);
  CHECK(run("compute " + kData + "/torus2_trivial.json --degrees 0..7 -o " + tmp("x")) == 2);
  CHECK(run("frobnicate") == 1);
}

TEST_CASE("a corrupted complex is an invariant violation") {
  CHECK(run("verify " + kData + "/corrupted_torus.json --checks duality -o " + tmp("bad")) == 3);
  auto r = report(tmp("bad"));
  REQUIRE(r["checks"].size() == 1);
  CHECK(r["checks"][0]["pass"] == false);
  bool dd = false;
  for (const auto& w : r["checks"][0]["witnesses"])
    if (w.get<std::string>().find("boundary of boundary") != std::string::npos) dd = true;
  CHECK(dd);
  CHECK(run("compute " + kData + "/corrupted_torus.json -o " + tmp("bad2")) == 3);
}

TEST_CASE("complex export feeds the complex family") {
  REQUIRE(run("complex " + kData + "/circle_doubling.json -o " + tmp("cx")) == 0);
  auto cx = report(tmp("cx"));
  CHECK(cx["cells"].size() == 2);
  nlohmann::json spec{{"family", "complex"},
                      {"base", nlohmann::json::parse(slurp(kData + "/circle_alpha2.json"))},
                      {"complex", cx}};
  std::ofstream(tmp("cxspec")) << spec.dump();
  REQUIRE(run("compute " + tmp("cxspec") + " -o " + tmp("cxout")) == 0);
  CHECK(report(tmp("cxout"))["dimensions"]["E"]["ordinary"] == nlohmann::json::array({0, 0}));
}
